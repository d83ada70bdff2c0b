"""Finite points of the hyperspace, the induced shift and the Hausdorff metric.

Also the two one-block families used to show that the induced map on the
full 2-shift is not expansive: sequences of 0s carrying a single run of 1s of
length at most ``n`` (first family) or ``n + 1`` (second family).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple

from .errors import DomainError, LiteralError, NotExactError
from .sequences import (
    DEFAULT_DEPTH,
    FULL_ALPHABET,
    Alphabet,
    EventuallyPeriodicWord,
    Interval,
    SymbolStream,
    d1_bounded,
    d1_exact,
    parse_word_literal,
    same_point,
)


def _sort_key(s: SymbolStream, depth: int):
    tag = s.literal() if isinstance(s, EventuallyPeriodicWord) else "~" + s.describe()
    return s.prefix(depth), tag


class FiniteCompactSet:
    """Nonempty finite set of streams in a deterministic canonical order.

    Eventually periodic elements are deduplicated exactly, any pair involving a
    generator stream by prefix equality to ``depth``.
    """

    __slots__ = ("elements", "depth")

    def __init__(self, elements: Iterable[SymbolStream], depth: int = DEFAULT_DEPTH):
        items = sorted(elements, key=lambda s: _sort_key(s, depth))
        if not items:
            raise DomainError("a hyperspace point must be nonempty")
        kept: List[SymbolStream] = []
        for s in items:
            if not any(same_point(s, t, depth) for t in kept):
                kept.append(s)
        self.elements: Tuple[SymbolStream, ...] = tuple(kept)
        self.depth = depth

    def __iter__(self) -> Iterator[SymbolStream]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteCompactSet):
            return NotImplemented
        depth = min(self.depth, other.depth)
        return len(self) == len(other) and all(
            same_point(a, b, depth) for a, b in zip(self.elements, other.elements)
        )

    def __hash__(self) -> int:
        return hash(tuple(s.prefix(self.depth) for s in self.elements))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(s, EventuallyPeriodicWord) for s in self.elements)

    def literals(self) -> List[str]:
        return [s.literal() if isinstance(s, EventuallyPeriodicWord) else s.describe() for s in self.elements]

    def __repr__(self) -> str:
        return "{" + ", ".join(self.literals()) + "}"


def finite_set(*literals: str) -> FiniteCompactSet:
    return FiniteCompactSet(parse_word_literal(t) for t in literals)


def parse_set_text(text: str, alphabet: Alphabet = FULL_ALPHABET) -> FiniteCompactSet:
    """One literal per line; blank lines and ``#`` comments are ignored."""
    words = []
    for k, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            words.append(parse_word_literal(line, alphabet))
        except LiteralError as exc:
            raise LiteralError(f"line {k}: {exc}") from None
    if not words:
        raise LiteralError("set file contains no sequences")
    return FiniteCompactSet(words)


def induced_shift(A: FiniteCompactSet, k: int) -> FiniteCompactSet:
    if k < 0:
        raise DomainError("shift count must be nonnegative")
    return FiniteCompactSet((s.shift(k) for s in A), A.depth)


def _require_exact(*sets: FiniteCompactSet) -> None:
    for S in sets:
        if not S.is_exact:
            raise NotExactError("set has generator elements; use hausdorff_bounded")


def directed_exact(A: FiniteCompactSet, B: FiniteCompactSet) -> Fraction:
    """sup over a in A of the distance from a to B."""
    _require_exact(A, B)
    return max(min(d1_exact(a, b) for b in B) for a in A)


def hausdorff_exact(A: FiniteCompactSet, B: FiniteCompactSet) -> Fraction:
    _require_exact(A, B)
    dist = [[d1_exact(a, b) for b in B] for a in A]
    forward = max(min(row) for row in dist)
    backward = max(min(dist[i][j] for i in range(len(A))) for j in range(len(B)))
    return max(forward, backward)


def hausdorff_bounded(A: FiniteCompactSet, B: FiniteCompactSet, depth: int) -> Interval:
    """Bracket on the Hausdorff distance built from d1_bounded on every pair."""
    box = [[d1_bounded(a, b, depth) for b in B] for a in A]
    lo_f = max(min(iv[0] for iv in row) for row in box)
    hi_f = max(min(iv[1] for iv in row) for row in box)
    cols = range(len(B))
    lo_b = max(min(box[i][j][0] for i in range(len(A))) for j in cols)
    hi_b = max(min(box[i][j][1] for i in range(len(A))) for j in cols)
    return max(lo_f, lo_b), max(hi_f, hi_b)


# ---------------------------------------------------------------- one-block families

@dataclass(frozen=True)
class OneBlockFamily:
    """All 0s except one run of 1s of length r <= max_run, at any start p; r = 0 is 0^inf."""

    n: int
    which: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be at least 1")
        if self.which not in (1, 2):
            raise DomainError("which must be 1 or 2")

    @property
    def max_run(self) -> int:
        return self.n if self.which == 1 else self.n + 1

    @property
    def name(self) -> str:
        return f"S{self.which}"

    def element(self, p: int, r: int) -> EventuallyPeriodicWord:
        if not 0 <= r <= self.max_run:
            raise DomainError(f"run length {r} outside 0..{self.max_run}")
        return EventuallyPeriodicWord("0" * p + "1" * r, "0") if r else EventuallyPeriodicWord("", "0")

    def contains(self, x: EventuallyPeriodicWord) -> bool:
        if x.period != "0":
            return False
        core = x.preperiod.lstrip("0")
        return core == "1" * len(core) and len(core) <= self.max_run

    def parameters(self, max_start: int) -> List[Tuple[int, int]]:
        """(p, r) pairs with p <= max_start, the zero point listed once as (0, 0)."""
        params = [(0, 0)]
        params += [(p, r) for r in range(1, self.max_run + 1) for p in range(max_start + 1)]
        return params

    def elements(self, max_start: int) -> List[EventuallyPeriodicWord]:
        return [self.element(p, r) for p, r in self.parameters(max_start)]


def one_block_sets(n: int) -> Tuple[OneBlockFamily, OneBlockFamily]:
    return OneBlockFamily(n, 1), OneBlockFamily(n, 2)


def shift_parameters(p: int, r: int) -> Tuple[int, int]:
    """Parameters of the shifted element: (p-1, r), (0, r-1), or the zero point."""
    if r == 0:
        return 0, 0
    if p > 0:
        return p - 1, r
    return (0, r - 1) if r > 1 else (0, 0)


@dataclass
class InvarianceAudit:
    family: str
    n: int
    depth: int
    holds: bool
    cases: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


def one_block_invariance_check(S: OneBlockFamily, depth: int = 64) -> InvarianceAudit:
    """Check that the induced shift maps the family onto itself, case by case.

    Every parametric element with start p <= depth is shifted symbolically and
    the result is cross-checked against the actual shift of its sequence;
    surjectivity is witnessed by (p + 1, r) mapping to (p, r).
    """
    if depth < S.max_run:
        raise DomainError(f"truncation depth {depth} is below the maximal run length {S.max_run}")
    cases = {"zero": 0, "move_left": 0, "shorten": 0, "vanish": 0, "preimage": 0}
    failures = []
    for p, r in S.parameters(depth):
        q, s = shift_parameters(p, r)
        if r == 0:
            cases["zero"] += 1
        elif p > 0:
            cases["move_left"] += 1
        elif r > 1:
            cases["shorten"] += 1
        else:
            cases["vanish"] += 1
        image = S.element(p, r).shift(1)
        if image != S.element(q, s) or not S.contains(image):
            failures.append({"p": p, "r": r, "image": image.literal()})
        if S.element(p + 1, r).shift(1) != S.element(p, r):
            failures.append({"p": p, "r": r, "preimage": S.element(p + 1, r).literal()})
        else:
            cases["preimage"] += 1
    return InvarianceAudit(S.name, S.n, depth, not failures, cases, failures)


def _run_mask(p: int, r: int) -> int:
    return ((1 << r) - 1) << p


def one_block_hausdorff(n: int, radius: Optional[int] = None) -> Fraction:
    """Exact Hausdorff distance between the two families for block bound ``n``.

    Brute force over parametric elements with start p <= n + 40: any element
    starting later is within 2^-(n+40) of the zero point, which both families
    contain, so the truncation does not change the supremum.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    if radius is None:
        radius = n + 40
    S1, S2 = one_block_sets(n)
    P1, P2 = S1.parameters(radius), S2.parameters(radius)
    width = radius + S2.max_run + 1
    # distance scaled by 2^width: sum over differing indices i of 2^(width - i)
    def scaled(a, b):
        diff = _run_mask(*a) ^ _run_mask(*b)
        total = 0
        while diff:
            low = diff & -diff
            total += 1 << (width - (low.bit_length() - 1))
            diff ^= low
        return total

    forward = max(min(scaled(a, b) for b in P2) for a in P1)
    backward = max(min(scaled(b, a) for a in P1) for b in P2)
    return Fraction(max(forward, backward), 1 << width)


def expansivity_counterexample(n: int, delta_exp: int = 1, depth: int = 64) -> dict:
    """Report showing that the two families stay closer than 2^-delta_exp forever."""
    S1, S2 = one_block_sets(n)
    audits = [one_block_invariance_check(S, depth) for S in (S1, S2)]
    value = one_block_hausdorff(n)
    claimed = Fraction(1, 2 ** (n + 1))
    delta = Fraction(1, 2 ** delta_exp)
    return {
        "n": n,
        "families": {
            S.name: {"max_run": S.max_run, "invariant": bool(a), "cases": a.cases}
            for S, a in zip((S1, S2), audits)
        },
        "hausdorff": value,
        "claimed_value": claimed,
        "matches_claim": value == claimed,
        "delta": delta,
        "below_delta": value < delta,
        "non_expansive_witness": all(audits) and value < delta,
    }
