"""Constructive witnesses for the hyperspace results, and the named example streams.

Each construction returns its principal object; the ``*_record`` variants wrap
it in a :class:`WitnessRecord` whose certified quantities are recomputed with
the metric operations, never copied from the construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, isqrt, lcm
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import AlphabetError, DomainError, HorizonError, LiteralError, WitnessNotFoundError
from .hyperspace import FiniteCompactSet, hausdorff_bounded, hausdorff_exact, induced_shift
from .sequences import (
    BINARY,
    Alphabet,
    EventuallyPeriodicWord,
    SymbolStream,
    d1_exact,
    parse_word_literal,
)
from .sft import (
    TransitionMatrix,
    classify_sft,
    forward_core,
    is_allowed_point,
    periodic_extension,
)


@dataclass
class WitnessRecord:
    kind: str
    inputs: dict
    outputs: dict
    certified: dict

    def to_dict(self) -> dict:
        return {"kind": self.kind, "inputs": self.inputs, "outputs": self.outputs, "certified": self.certified}


# ---------------------------------------------------------------- streams

@dataclass(frozen=True)
class SturmianSpec:
    """``fib`` or the mechanical word of slope alpha = p/q and intercept rho.

    Rational slopes give periodic words, so queries are restricted to indices
    below ``valid_horizon`` (default q - 1, which must stay below q).
    """

    variant: str = "fib"
    alpha: Optional[Fraction] = None
    rho: Fraction = Fraction(0)
    valid_horizon: Optional[int] = None

    def __post_init__(self):
        if self.variant == "fib":
            if self.alpha is not None:
                raise DomainError("the fib variant takes no slope")
            return
        if self.variant != "mechanical":
            raise DomainError(f"unknown Sturmian variant {self.variant!r}")
        if self.alpha is None:
            raise DomainError("mechanical words need a slope")
        alpha, rho = Fraction(self.alpha), Fraction(self.rho)
        if not 0 < alpha < 1:
            raise DomainError("slope must lie strictly between 0 and 1")
        if not 0 <= rho < 1:
            raise DomainError("intercept must lie in [0, 1)")
        horizon = alpha.denominator - 1 if self.valid_horizon is None else self.valid_horizon
        if not 0 <= horizon < alpha.denominator:
            raise DomainError(f"valid_horizon must be below q = {alpha.denominator}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "valid_horizon", horizon)

    @property
    def genuine(self) -> bool:
        """Only the Fibonacci word is aperiodic; rational slopes are Sturmian-like up to q."""
        return self.variant == "fib"

    def describe(self) -> str:
        if self.variant == "fib":
            return "sturmian:fib"
        text = f"sturmian:{self.alpha.numerator}/{self.alpha.denominator}"
        if self.rho:
            text += f":{self.rho.numerator}/{self.rho.denominator}"
        return text


def _floor_golden(m: int) -> int:
    """floor(m * (3 - sqrt 5) / 2) in exact integer arithmetic."""
    if m == 0:
        return 0
    # sqrt(5 m^2) is irrational, so it lies strictly between t and t + 1
    return (3 * m - isqrt(5 * m * m) - 1) // 2


def mechanical_word(alpha: Fraction, rho: Fraction, length: int) -> str:
    """s_n = floor((n+1) alpha + rho) - floor(n alpha + rho), no validity checks."""
    alpha, rho = Fraction(alpha), Fraction(rho)
    return "".join(str(floor((i + 1) * alpha + rho) - floor(i * alpha + rho)) for i in range(length))


class SturmianStream(SymbolStream):
    kind = "sturmian"

    def __init__(self, spec: SturmianSpec):
        self.spec = spec
        self._cache = ""

    def __eq__(self, other):
        return isinstance(other, SturmianStream) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def _check(self, length: int) -> None:
        h = self.spec.valid_horizon
        if h is not None and length > h:
            raise HorizonError(f"{self.spec.describe()} is only valid on indices below {h}")

    def symbol_at(self, i: int) -> str:
        self._check(i + 1)
        if self.spec.variant == "fib":
            return str(_floor_golden(i + 2) - _floor_golden(i + 1))
        return mechanical_word(self.spec.alpha, self.spec.rho + i * self.spec.alpha, 1)

    def prefix(self, length: int) -> str:
        self._check(length)
        if len(self._cache) < length:
            if self.spec.variant == "fib":
                floors = [_floor_golden(m) for m in range(length + 2)]
                self._cache = "".join(str(floors[i + 2] - floors[i + 1]) for i in range(length))
            else:
                self._cache = mechanical_word(self.spec.alpha, self.spec.rho, length)
        return self._cache[:length]

    def describe(self) -> str:
        return self.spec.describe()


def sturmian_stream(spec: SturmianSpec) -> SturmianStream:
    return SturmianStream(spec)


_NK_RULES: Dict[str, Callable[[int], int]] = {
    "linear": lambda k: k,
    "quadratic": lambda k: k * k,
}


@dataclass(frozen=True)
class WkSpec:
    """Block lengths n_k for w_2k = 1^(n_k); a named rule or a custom callable."""

    rule: str = "linear"
    nk: Optional[Callable[[int], int]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.nk is None and self.rule not in _NK_RULES:
            raise DomainError(f"unknown n_k rule {self.rule!r}; built-in: {', '.join(sorted(_NK_RULES))}")

    def n(self, k: int) -> int:
        return (self.nk or _NK_RULES[self.rule])(k)


class WkStream(SymbolStream):
    """x = w_1 w_2 w_3 ... with w_1 = 0, w_2k = 1^(n_k), w_2k+1 = w_1 ... w_2k."""

    kind = "wk-concatenation"

    def __init__(self, spec: WkSpec):
        self.spec = spec
        self._text = "0"
        self._bounds = [1]

    def __eq__(self, other):
        return isinstance(other, WkStream) and other.spec == self.spec and self.spec.nk is None

    def __hash__(self):
        return hash(self.spec.rule)

    def _grow(self, length: int = 0, blocks: int = 0) -> None:
        while len(self._text) < length or len(self._bounds) < blocks:
            k = len(self._bounds) // 2 + 1
            nk = self.spec.n(k)
            prev = self.spec.n(k - 1) if k > 1 else 0
            if nk <= prev:
                raise DomainError(f"n_k must be strictly increasing: n_{k} = {nk} after n_{k - 1} = {prev}")
            self._text += "1" * nk
            self._bounds.append(len(self._text))
            self._text += self._text  # w_2k+1 repeats everything so far
            self._bounds.append(len(self._text))

    def symbol_at(self, i: int) -> str:
        self._grow(length=i + 1)
        return self._text[i]

    def prefix(self, length: int) -> str:
        self._grow(length=length)
        return self._text[:length]

    def boundaries(self, count: int) -> List[int]:
        """End index of each of the first ``count`` blocks."""
        self._grow(blocks=count)
        return self._bounds[:count]

    def block(self, k: int) -> str:
        b = [0] + self.boundaries(k)
        return self._text[b[k - 1]:b[k]]

    def describe(self) -> str:
        return f"wk:{self.spec.rule}"


def wk_stream(spec: WkSpec = WkSpec()) -> WkStream:
    return WkStream(spec)


class FlippedStream(SymbolStream):
    """``base`` with the symbol at every index 2^m, m >= n0, replaced by another symbol."""

    kind = "li-yorke-flip"

    def __init__(self, base: SymbolStream, n0: int, alphabet: Alphabet = BINARY):
        if len(alphabet) < 2:
            raise AlphabetError("need at least two symbols to flip")
        if n0 < 0:
            raise DomainError("n0 must be nonnegative")
        self.base, self.n0, self.alphabet = base, n0, alphabet

    def __eq__(self, other):
        return (isinstance(other, FlippedStream)
                and (other.base, other.n0, other.alphabet) == (self.base, self.n0, self.alphabet))

    def __hash__(self):
        return hash((self.base, self.n0))

    def flipped(self, i: int) -> bool:
        return i >= 1 << self.n0 and i & (i - 1) == 0

    def symbol_at(self, i: int) -> str:
        c = self.base.symbol_at(i)
        return self.alphabet.other(c) if self.flipped(i) else c

    def prefix(self, length: int) -> str:
        chars = list(self.base.prefix(length))
        i = 1 << self.n0
        while i < length:
            chars[i] = self.alphabet.other(chars[i])
            i <<= 1
        return "".join(chars)

    def describe(self) -> str:
        return f"flip({self.base.describe()},n0={self.n0})"


_RATIO = re.compile(r"^(\d+)/(\d+)$")


def _ratio(text: str) -> Fraction:
    m = _RATIO.match(text)
    if not m or int(m.group(2)) == 0:
        raise LiteralError(f"expected a rational p/q, got {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2)))


def stream_from_spec(text: str) -> SymbolStream:
    """``ep:PRE(PER)``, ``sturmian:fib``, ``sturmian:p/q[:a/b]`` or ``wk:<rule>``."""
    tag, _, body = text.partition(":")
    if tag == "ep":
        return parse_word_literal(body)
    if tag == "sturmian":
        if body == "fib":
            return sturmian_stream(SturmianSpec())
        parts = body.split(":")
        if len(parts) > 2 or not parts[0]:
            raise LiteralError(f"malformed Sturmian spec {text!r}")
        rho = _ratio(parts[1]) if len(parts) == 2 else Fraction(0)
        return sturmian_stream(SturmianSpec("mechanical", _ratio(parts[0]), rho))
    if tag == "wk":
        return wk_stream(WkSpec(body or "linear"))
    raise LiteralError(f"unknown stream spec {text!r}; expected ep:, sturmian: or wk:")


# ---------------------------------------------------------------- full shift witnesses

def _same_length(prefixes: Sequence[str]) -> int:
    if not prefixes:
        raise DomainError("need at least one prefix")
    lengths = {len(w) for w in prefixes}
    if len(lengths) != 1:
        raise DomainError(f"prefixes must share one length, got lengths {sorted(lengths)}")
    (length,) = lengths
    if length < 1:
        raise DomainError("prefixes must be nonempty")
    return length


def periodize_set(prefixes: Sequence[str], alphabet: Optional[Alphabet] = None) -> FiniteCompactSet:
    """{w w w ... : w in prefixes}, all prefixes of the same length r + 1."""
    _same_length(prefixes)
    if alphabet is not None:
        for w in prefixes:
            alphabet.check(w)
    return FiniteCompactSet(EventuallyPeriodicWord("", w) for w in prefixes)


def least_induced_period(P: FiniteCompactSet, bound: int) -> Optional[int]:
    for t in range(1, bound + 1):
        if induced_shift(P, t) == P:
            return t
    return None


def periodize_record(prefixes: Sequence[str], alphabet: Alphabet = BINARY) -> WitnessRecord:
    r1 = _same_length(prefixes)
    P = periodize_set(prefixes, alphabet)
    # farthest stream sharing w's prefix disagrees with w^inf at every later index
    worst = Fraction(0)
    for w in prefixes:
        far = EventuallyPeriodicWord(w, "".join(alphabet.other(c) for c in w))
        worst = max(worst, d1_exact(EventuallyPeriodicWord("", w), far))
    period = least_induced_period(P, r1)
    return WitnessRecord(
        "periodize",
        {"prefixes": list(prefixes)},
        {"set": P.literals()},
        {
            "induced_period": period,
            "period_divides": period is not None and r1 % period == 0,
            "max_distance_to_prefix_cylinder": worst,
            "bound": Fraction(1, 2 ** (r1 - 1)),
        },
    )


def leo_witness(prefixes: Sequence[str], K: FiniteCompactSet) -> FiniteCompactSet:
    """M = union over prefixes w of {w a : a in K}; shifting M by |w| returns K."""
    _same_length(prefixes)
    if not K.is_exact:
        raise DomainError("K must consist of eventually periodic words")
    return FiniteCompactSet(
        EventuallyPeriodicWord(w + a.preperiod, a.period) for w in prefixes for a in K
    )


def leo_record(prefixes: Sequence[str], K: FiniteCompactSet) -> WitnessRecord:
    r1 = _same_length(prefixes)
    M = leo_witness(prefixes, K)
    P = periodize_set(prefixes)
    return WitnessRecord(
        "leo",
        {"prefixes": list(prefixes), "K": K.literals()},
        {"M": M.literals(), "iterate": r1},
        {
            "image_equals_K": induced_shift(M, r1) == K,
            "hausdorff_to_periodized_prefixes": hausdorff_exact(M, P),
            "bound": Fraction(1, 2 ** (r1 - 1)),
        },
    )


def full_shift_sensitivity_witness(A: FiniteCompactSet, n: int, alphabet: Alphabet = BINARY) -> FiniteCompactSet:
    """Keep x_0 ... x_n of every element and append x x x ..., x != (first element)_(n+1)."""
    if len(alphabet) < 2:
        raise AlphabetError("sensitivity needs an alphabet with at least two symbols")
    if not A.is_exact:
        raise DomainError("A must consist of eventually periodic words")
    if n < 0:
        raise DomainError("depth must be nonnegative")
    anchor = A.elements[0].symbol_at(n + 1)
    x = next(c for c in alphabet.symbols if c != anchor)
    return FiniteCompactSet(EventuallyPeriodicWord(a.prefix(n + 1), x) for a in A)


def full_shift_sensitivity_record(A: FiniteCompactSet, n: int, alphabet: Alphabet = BINARY) -> WitnessRecord:
    B = full_shift_sensitivity_witness(A, n, alphabet)
    return WitnessRecord(
        "full-sens",
        {"A": A.literals(), "n": n},
        {"B": B.literals(), "iterate": n + 1},
        {
            "hausdorff_before": hausdorff_exact(A, B),
            "hausdorff_after": hausdorff_exact(induced_shift(A, n + 1), induced_shift(B, n + 1)),
            "constant": Fraction(1, 2),
        },
    )


def liyorke_witness(x: SymbolStream, n0: int, alphabet: Alphabet = BINARY) -> FlippedStream:
    return FlippedStream(x, n0, alphabet)


# ---------------------------------------------------------------- SFT witnesses

#: Forbidden words of a vertex shift have length 2.
FORBIDDEN_LENGTH = 2


def _greedy_tail(M: TransitionMatrix, start: int, core: int) -> Tuple[str, str]:
    """Follow least-index successors inside ``core`` from ``start`` until a vertex repeats."""
    path, seen = [start], {start: 0}
    while True:
        nxt = M.rows[path[-1]] & core
        v = (nxt & -nxt).bit_length() - 1
        if v in seen:
            cut = seen[v]
            sym = M.symbols
            return "".join(sym[u] for u in path[:cut]), "".join(sym[u] for u in path[cut:])
        seen[v] = len(path)
        path.append(v)


def _branch(M: TransitionMatrix, x: EventuallyPeriodicWord, n: int, core: int) -> Tuple[EventuallyPeriodicWord, int]:
    """First offset l >= 1 at which an alternative to x_(n+l) exists, and the branched point."""
    limit = max(FORBIDDEN_LENGTH, M.n + 1)
    for l in range(1, limit + 1):
        previous = M.index(x.symbol_at(n + l - 1))
        current = M.index(x.symbol_at(n + l))
        alternatives = M.rows[previous] & core & ~(1 << current)
        if alternatives:
            v = (alternatives & -alternatives).bit_length() - 1
            pre, per = _greedy_tail(M, v, core)
            return EventuallyPeriodicWord(x.prefix(n + l) + pre, per), l
    raise DomainError(f"no branch after {x.literal()} at depth {n}: the point is isolated")


@dataclass
class SftSensitivity:
    C: FiniteCompactSet
    branches: List[Tuple[str, str, int]]
    threshold: Fraction


def _sft_sensitivity(M: TransitionMatrix, A: FiniteCompactSet, n: int) -> SftSensitivity:
    if not classify_sft(M).sensitive:
        raise DomainError("the shift has isolated points, so it is not sensitive")
    if not A.is_exact:
        raise DomainError("A must consist of eventually periodic words")
    for a in A:
        if not is_allowed_point(M, a):
            raise DomainError(f"{a.literal()} is not an allowed point")
    core = forward_core(M)
    threshold = Fraction(1, 2 ** (FORBIDDEN_LENGTH + 1))
    anchor = A.elements[0].shift(n)
    chosen, branches = [], []
    for x in A:
        y, offset = _branch(M, x, n, core)
        keep_y = d1_exact(anchor, y.shift(n)) >= threshold
        chosen.append(y if keep_y else x)
        branches.append((x.literal(), y.literal(), offset))
    return SftSensitivity(FiniteCompactSet(chosen), branches, threshold)


def sft_sensitivity_witness(M: TransitionMatrix, A: FiniteCompactSet, n: int) -> FiniteCompactSet:
    """Set C inside the depth-n cylinders of A whose n-th image is >= 1/8 away."""
    return _sft_sensitivity(M, A, n).C


def sft_sensitivity_record(M: TransitionMatrix, A: FiniteCompactSet, n: int) -> WitnessRecord:
    w = _sft_sensitivity(M, A, n)
    after = hausdorff_exact(induced_shift(A, n), induced_shift(w.C, n))
    return WitnessRecord(
        "sft-sens",
        {"A": A.literals(), "n": n},
        {
            "C": w.C.literals(),
            "branches": [{"x": x, "y": y, "offset": l} for x, y, l in w.branches],
        },
        {
            "hausdorff_after": after,
            "constant": w.threshold,
            "meets_constant": after >= w.threshold,
        },
    )


def dense_periodic_hyper(M: TransitionMatrix, A: FiniteCompactSet, n: int) -> FiniteCompactSet:
    """Periodic extensions of the depth-n prefixes of A's elements."""
    if n < 1:
        raise DomainError("depth must be at least 1")
    return FiniteCompactSet(periodic_extension(M, a.prefix(n)) for a in A)


def dense_periodic_record(M: TransitionMatrix, A: FiniteCompactSet, n: int) -> WitnessRecord:
    P = dense_periodic_hyper(M, A, n)
    period = lcm(*(len(p.period) for p in P))
    return WitnessRecord(
        "dense-periodic",
        {"A": A.literals(), "n": n},
        {"P": P.literals(), "lcm_period": period},
        {
            "periodic": induced_shift(P, period) == P,
            "hausdorff_to_A": hausdorff_exact(A, P) if A.is_exact else None,
            "bound": Fraction(1, 2 ** (n - 1)),
        },
    )


# ---------------------------------------------------------------- block-concatenation example

@dataclass
class Example2Witness:
    B: FiniteCompactSet
    iterate: int
    lower_bound: Fraction
    collapse: int
    cut: int


def example2_hyper_witness(offsets: Sequence[int], block: int = 5, stream: Optional[SymbolStream] = None,
                           cut: Optional[int] = None, horizon: int = 5000,
                           depth: int = 40) -> Tuple[FiniteCompactSet, int, Fraction]:
    """Replace every tail of A = {shift(x, k) : k in offsets} beyond a block end by 1^inf.

    B collapses to {1^inf}; the first iterate l <= horizon where the bounded
    Hausdorff distance to the image of A is at least 1/2 is returned.
    """
    w = _example2(offsets, block, stream, cut, horizon, depth)
    return w.B, w.iterate, w.lower_bound


def _example2(offsets, block, stream, cut, horizon, depth) -> Example2Witness:
    if not offsets or any(k < 0 for k in offsets):
        raise DomainError("offsets must be a nonempty list of nonnegative integers")
    x = stream if stream is not None else wk_stream()
    if cut is None:
        if not isinstance(x, WkStream):
            raise DomainError("give an explicit cut index for streams without block structure")
        b = block
        while x.boundaries(b)[-1] <= max(offsets):
            b += 1
        cut = x.boundaries(b)[-1]
    if cut <= max(offsets):
        raise DomainError("cut index must exceed every offset")
    A = FiniteCompactSet([x.shift(k) for k in offsets])
    B = FiniteCompactSet(EventuallyPeriodicWord(x.prefix(cut)[k:], "1") for k in offsets)
    ones = FiniteCompactSet([EventuallyPeriodicWord("", "1")])
    collapse = cut - min(offsets)
    half = Fraction(1, 2)
    for l in range(collapse, horizon + 1):
        image = induced_shift(B, l)
        if image != ones:
            raise DomainError("B failed to collapse onto 1^inf")
        lo, _ = hausdorff_bounded(induced_shift(A, l), image, depth)
        if lo >= half:
            return Example2Witness(B, l, lo, collapse, cut)
    raise WitnessNotFoundError(
        f"no iterate in [{collapse}, {horizon}] separates the sets by 1/2 at depth {depth}"
    )


def example2_record(offsets: Sequence[int], block: int = 5, horizon: int = 5000, depth: int = 40) -> WitnessRecord:
    x = wk_stream()
    w = _example2(offsets, block, x, None, horizon, depth)
    A = FiniteCompactSet([x.shift(k) for k in offsets])
    lo, hi = hausdorff_bounded(induced_shift(A, w.iterate), induced_shift(w.B, w.iterate), depth)
    before = hausdorff_bounded(A, w.B, depth)
    return WitnessRecord(
        "example2-hyper",
        {"offsets": list(offsets), "block": block, "horizon": horizon, "depth": depth},
        {"B": w.B.literals(), "cut": w.cut, "collapse_iterate": w.collapse, "iterate": w.iterate},
        {
            "hausdorff_after": [lo, hi],
            "hausdorff_before_upper": before[1],
            "constant": Fraction(1, 2),
            "meets_constant": lo >= Fraction(1, 2),
        },
    )
