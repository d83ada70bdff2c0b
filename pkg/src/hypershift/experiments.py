"""Finite-horizon experiments: sensitivity-time sets, gap statistics, Li-Yorke scans
and a brute-force probe of hyperspace transitivity.

Results computed from a stream prefix are lower approximations of the orbit
closure's language; every verdict here holds only up to the stated horizon.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import DomainError
from .hyperspace import FiniteCompactSet
from .sequences import EventuallyPeriodicWord, SymbolStream, _diff_bits
from .sft import (
    TransitionMatrix,
    _bits,
    _reach,
    _step,
    is_allowed_word,
    path_of_length,
    periodic_extension,
    trim_essential,
    word_indices,
)

EMPIRICAL = "empirical up to horizon"
# symbols after the window index K searched for a further difference
LOOKAHEAD = 64


def factor_set(s: SymbolStream, length: int, budget: int) -> Set[str]:
    """Length-``length`` windows of the first ``budget`` symbols of s."""
    if length < 1:
        raise DomainError("factor length must be at least 1")
    if budget < length:
        raise DomainError(f"budget {budget} is below the factor length {length}")
    text = s.prefix(budget)
    return {text[i:i + length] for i in range(budget - length + 1)}


# ---------------------------------------------------------------- languages

class StreamLanguage:
    """Factors of a fixed prefix of a stream, standing in for its orbit closure."""

    def __init__(self, s: SymbolStream, budget: int):
        self.text = s.prefix(budget)
        self.label = s.describe()
        self.budget = budget

    def contains(self, w: str) -> bool:
        return w in self.text

    def occurrences(self, w: str) -> List[int]:
        occ, i = [], self.text.find(w)
        while i != -1:
            occ.append(i)
            i = self.text.find(w, i + 1)
        return occ

    def separations(self, w: str, times: range, K: int) -> int:
        text, occ = self.text, self.occurrences(w)
        mask = 0
        for n in times:
            b = n + K
            if b < len(w):
                continue
            first = None
            boundary = set()
            tails = set()
            separated = False
            for q in occ:
                if q + b >= len(text):
                    break
                window = text[q + n:q + b]
                if first is None:
                    first = window
                elif window != first:
                    separated = True
                    break
                tail = text[q + b + 1:q + b + 1 + LOOKAHEAD]
                if len(tail) == LOOKAHEAD:
                    boundary.add(text[q + b])
                    tails.add(tail)
            # equal windows: a difference at index K plus any later one still
            # gives a distance strictly above 2^-K; with two boundary symbols
            # and two tails some cross pair has both
            if separated or (len(boundary) >= 2 and len(tails) >= 2):
                mask |= 1 << n
        return mask


class SftLanguage:
    """Exact language of a vertex shift (after trimming to its essential part)."""

    def __init__(self, M: TransitionMatrix):
        self.M, _ = trim_essential(M)
        self.label = "sft"
        self._branchy_mask = None

    def contains(self, w: str) -> bool:
        try:
            return self.M.n > 0 and is_allowed_word(self.M, w)
        except DomainError:
            return False

    def separations(self, w: str, times: range, K: int) -> int:
        # R_t: vertices at position |w| - 1 + t. Points of [w] differ at a position
        # iff its R_t has two vertices; a difference at window index K counts
        # when the two paths can also differ afterwards.
        M = self.M
        last = word_indices(M, w)[-1]
        top = times.stop + K
        reach = [1 << last]
        for _ in range(top):
            reach.append(_step(M.rows, reach[-1]))
        wide = [r & (r - 1) != 0 for r in reach]
        later = [self._splits_later(r) for r in reach]
        base = len(w) - 1
        mask = 0
        for n in times:
            lo = max(n, len(w)) - base
            hi = n + K - 1 - base
            if hi >= lo and any(wide[lo:hi + 1]):
                mask |= 1 << n
            elif n + K >= len(w) and later[n + K - base]:
                mask |= 1 << n
        return mask

    def _splits_later(self, r: int) -> bool:
        # two vertices of r whose continuations can still differ
        verts = list(_bits(r))
        if len(verts) < 2:
            return False
        if any(self._branchy >> v & 1 for v in verts):
            return True
        return len({self.M.rows[v] for v in verts}) >= 2

    @property
    def _branchy(self) -> int:
        # vertices with more than one infinite continuation
        if self._branchy_mask is None:
            M = self.M
            branching = 0
            for i in range(M.n):
                if M.out_degree(i) >= 2:
                    branching |= 1 << i
            self._branchy_mask = _reach(M.transpose_rows(), branching)
        return self._branchy_mask


# ---------------------------------------------------------------- sensitivity times

@dataclass(frozen=True)
class SensitivityTimeSet:
    horizon: int
    bits: int
    cylinder: str
    delta_exp: int

    def __contains__(self, n: int) -> bool:
        return bool(self.bits >> n & 1)

    def times(self) -> List[int]:
        return list(_bits(self.bits))

    def intervals(self) -> List[Tuple[int, int]]:
        """Maximal runs [a, b] of consecutive times."""
        runs: List[Tuple[int, int]] = []
        for n in _bits(self.bits):
            if runs and runs[-1][1] == n - 1:
                runs[-1] = (runs[-1][0], n)
            else:
                runs.append((n, n))
        return runs


def _chunks(T: int, parts: int) -> List[range]:
    size = -(-(T + 1) // parts)
    return [range(a, min(a + size, T + 1)) for a in range(0, T + 1, size)]


def _separations_job(args):
    language, w, times, K = args
    return language.separations(w, times, K)


def sensitivity_times(language, w: str, K: int, T: int, workers: int = 1) -> SensitivityTimeSet:
    """n is a time iff two points of [w] are more than 2^-K apart after n shifts.

    That happens when they differ somewhere in positions n .. n+K-1, or agree
    there, differ at n+K and again later. A lone difference at n+K gives
    exactly 2^-K and is not counted.
    """
    if T < 1:
        raise DomainError("horizon must be at least 1")
    if K < 1:
        raise DomainError("delta exponent must be at least 1")
    if not w or not language.contains(w):
        raise DomainError(f"cylinder word {w!r} is not in the language")
    if workers <= 1:
        bits = language.separations(w, range(T + 1), K)
    else:
        jobs = [(language, w, r, K) for r in _chunks(T, workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            bits = 0
            for part in pool.map(_separations_job, jobs):
                bits |= part
    return SensitivityTimeSet(T, bits, w, K)


@dataclass(frozen=True)
class GapStats:
    max_gap: int
    cofinite_from: Optional[int]
    syndetic_bound: Optional[int]
    gaps: Tuple[Tuple[int, int], ...]


def gap_stats(ts: SensitivityTimeSet) -> GapStats:
    """Maximal runs [a, b] of missing times inside [0, T] and derived bounds.

    ``cofinite_from`` is the start of the final run of times when that run
    reaches T and covers at least [T/2, T]; otherwise it is None.
    """
    gaps = []
    start = None
    for n in range(ts.horizon + 1):
        if n in ts:
            if start is not None:
                gaps.append((start, n - 1))
                start = None
        elif start is None:
            start = n
    if start is not None:
        gaps.append((start, ts.horizon))
    max_gap = max((b - a + 1 for a, b in gaps), default=0)
    # evidence of cofiniteness: an unbroken final run covering at least the
    # second half of the horizon
    cofinite = None
    if ts.horizon in ts:
        start = gaps[-1][1] + 1 if gaps else 0
        if 2 * start <= ts.horizon:
            cofinite = start
    return GapStats(max_gap, cofinite, max_gap if ts.bits else None, tuple(gaps))


# ---------------------------------------------------------------- Li-Yorke scan

@dataclass(frozen=True)
class LiYorkeScan:
    horizon: int
    K: int
    c: Fraction
    depth: int
    proximal_times: Tuple[int, ...]
    distal_times: Tuple[int, ...]
    verdict: str


def liyorke_scan(x: SymbolStream, y: SymbolStream, T: int, K: int, c: Fraction,
                 depth: Optional[int] = None) -> LiYorkeScan:
    """Classify each n <= T from certified D1 brackets at depth K + 2 (or ``depth``).

    proximal: upper bound < 2^-K; distal: lower bound > c. The verdict looks
    only at n > T/2.
    """
    c = Fraction(c)
    if T < 1:
        raise DomainError("horizon must be at least 1")
    if not 0 < c <= 2:
        raise DomainError("c must lie in (0, 2]")
    if depth is None:
        depth = K + 2
    eps = Fraction(1, 2 ** K)
    xs, ys = x.prefix(T + depth), y.prefix(T + depth)
    proximal, distal = [], []
    for n in range(T + 1):
        lo, hi = _bracket(xs[n:n + depth], ys[n:n + depth])
        if hi < eps:
            proximal.append(n)
        elif lo > c:
            distal.append(n)
    late_p = any(n > T / 2 for n in proximal)
    late_d = any(n > T / 2 for n in distal)
    verdict = {
        (True, True): "li-yorke-pattern",
        (True, False): "proximal-only",
        (False, True): "distal-only",
        (False, False): "neither",
    }[late_p, late_d]
    return LiYorkeScan(T, K, c, depth, tuple(proximal), tuple(distal), verdict)


def _bracket(a: str, b: str) -> Tuple[Fraction, Fraction]:
    # same bracket as d1_bounded, on prefixes that are already materialised
    lo = Fraction(2 * _diff_bits(a, b), 1 << len(a))
    return lo, lo + Fraction(1, 1 << (len(a) - 1))


# ---------------------------------------------------------------- hyperspace probe

@dataclass(frozen=True)
class ProbeHit:
    n: int
    A: FiniteCompactSet
    pairs: Tuple[Tuple[str, str], ...]


def _joined_word(M: TransitionMatrix, u: str, v: str, n: int) -> Optional[str]:
    """A word z with z[:|u|] = u and z[n:n+|v|] = v, or None."""
    if n < len(u):
        overlap = u[n:]
        if not (v.startswith(overlap) or overlap.startswith(v)):
            return None
        z = u + v[len(overlap):] if len(v) > len(overlap) else u
        return z if is_allowed_word(M, z) else None
    steps = n - len(u) + 1
    path = path_of_length(M, M.index(u[-1]), M.index(v[0]), steps)
    if path is None:
        return None
    return u + "".join(M.symbol(p) for p in path[1:-1]) + v


def hyper_orbit_probe(M: TransitionMatrix, src: Sequence[str], dst: Sequence[str], T: int,
                      max_connector: Optional[int] = 8) -> Optional[ProbeHit]:
    """First n <= T with a finite A in <src> whose n-th image lies in <dst>.

    Elements are periodic extensions of words joining a src cylinder to a dst
    cylinder n positions later. ``None`` means nothing was found within the
    bounds, which is not a proof that no such set exists. Pass
    ``max_connector=None`` to let connectors grow up to the horizon.
    """
    for w in list(src) + list(dst):
        if not w or not is_allowed_word(M, w):
            raise DomainError(f"cylinder {w!r} is not allowed")
    for n in range(1, T + 1):
        links: Dict[Tuple[str, str], EventuallyPeriodicWord] = {}
        for u, v in product(src, dst):
            if max_connector is not None and n - len(u) > max_connector:
                continue
            z = _joined_word(M, u, v, n)
            if z is None:
                continue
            try:
                links[u, v] = periodic_extension(M, z)
            except DomainError:
                continue
        # a cover exists iff every src and every dst cylinder has some link
        chosen = []
        for side, cylinders in ((0, src), (1, dst)):
            for w in cylinders:
                if any(p[side] == w for p in chosen):
                    continue
                pair = next((p for p in links if p[side] == w), None)
                if pair is None:
                    break
                chosen.append(pair)
            else:
                continue
            break
        else:
            return ProbeHit(n, FiniteCompactSet(links[p] for p in chosen), tuple(chosen))
    return None

