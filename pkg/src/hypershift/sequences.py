"""Symbol sequences over a finite discrete alphabet, the metric D1, cylinders and the shift.

Eventually periodic words are the exact currency of the package: they are
closed under the shift, have a finite canonical form and admit an exact
rational D1 distance. Every other stream only promises ``symbol_at`` and
``prefix``, and distances involving them are bracketed by intervals.

Literal grammar: ``PRE(PER)`` with single-character symbols ``0-9a-z``,
e.g. ``01(1)`` for 0 1 1 1 1 ... Whitespace inside a literal is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Tuple

from .errors import AlphabetError, DomainError, LiteralError

SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"

#: Depth to which generator streams are compared for equality.
DEFAULT_DEPTH = 128

Interval = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Alphabet:
    symbols: str = SYMBOLS

    def __post_init__(self):
        if not self.symbols:
            raise AlphabetError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise AlphabetError(f"duplicate symbols in alphabet {self.symbols!r}")
        bad = sorted(set(self.symbols) - set(SYMBOLS))
        if bad:
            raise AlphabetError(f"symbols must be drawn from 0-9a-z, got {''.join(bad)!r}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.symbols

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    def check(self, word: str) -> str:
        for c in word:
            if c not in self.symbols:
                raise AlphabetError(f"unknown symbol {c!r} (alphabet {self.symbols!r})")
        return word

    def other(self, symbol: str) -> str:
        """The next symbol cyclically; differs from ``symbol`` when |alphabet| >= 2."""
        if len(self.symbols) < 2:
            raise AlphabetError("alphabet has a single symbol")
        return self.symbols[(self.index(symbol) + 1) % len(self.symbols)]


FULL_ALPHABET = Alphabet(SYMBOLS)
BINARY = Alphabet("01")


class SymbolStream:
    """A one-sided infinite symbol sequence evaluated on demand."""

    kind = "abstract"

    def symbol_at(self, i: int) -> str:
        raise NotImplementedError

    def prefix(self, length: int) -> str:
        return "".join(self.symbol_at(i) for i in range(length))

    def shift(self, k: int) -> "SymbolStream":
        if k == 0:
            return self
        return ShiftedStream(self, k)

    def describe(self) -> str:
        return self.kind


def _primitive_root(word: str) -> str:
    # failure function: the shortest period p of word is len - fail[-1]
    n = len(word)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and word[i] != word[k]:
            k = fail[k - 1]
        if word[i] == word[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1]
    return word[:p] if n % p == 0 else word


@dataclass(frozen=True)
class EventuallyPeriodicWord(SymbolStream):
    """``preperiod`` followed by ``period`` repeated forever, kept in canonical form.

    Canonical means the period is primitive and the preperiod cannot be
    shortened, so two instances are equal iff they denote the same sequence.
    """

    preperiod: str
    period: str

    kind = "eventually-periodic"

    def __post_init__(self):
        if not self.period:
            raise LiteralError("empty period")
        pre, per = self.preperiod, _primitive_root(self.period)
        while pre and pre[-1] == per[-1]:
            pre, per = pre[:-1], per[-1] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def symbol_at(self, i: int) -> str:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, length: int) -> str:
        pre, per = self.preperiod, self.period
        if length <= len(pre):
            return pre[:length]
        rest = length - len(pre)
        return pre + (per * (rest // len(per) + 1))[:rest]

    def shift(self, k: int) -> "EventuallyPeriodicWord":
        if k < 0:
            raise DomainError("shift count must be nonnegative")
        pre, per = self.preperiod, self.period
        if k <= len(pre):
            return EventuallyPeriodicWord(pre[k:], per)
        r = (k - len(pre)) % len(per)
        return EventuallyPeriodicWord("", per[r:] + per[:r])

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod

    def literal(self) -> str:
        return f"{self.preperiod}({self.period})"

    def describe(self) -> str:
        return "ep:" + self.literal()

    def __str__(self) -> str:
        return self.literal()

    def __repr__(self) -> str:
        return f"EventuallyPeriodicWord({self.literal()!r})"


@dataclass(frozen=True)
class ShiftedStream(SymbolStream):
    base: SymbolStream
    offset: int

    kind = "shifted"

    def symbol_at(self, i: int) -> str:
        return self.base.symbol_at(i + self.offset)

    def prefix(self, length: int) -> str:
        return self.base.prefix(self.offset + length)[self.offset:]

    def shift(self, k: int) -> SymbolStream:
        if k == 0:
            return self
        return ShiftedStream(self.base, self.offset + k)

    def describe(self) -> str:
        return f"shift({self.base.describe()},{self.offset})"


@dataclass(frozen=True)
class Cylinder:
    word: str

    def __post_init__(self):
        if not self.word:
            raise DomainError("cylinder word must be nonempty")

    def contains(self, s: SymbolStream) -> bool:
        return s.prefix(len(self.word)) == self.word

    def __str__(self) -> str:
        return f"[{self.word}]"


_LITERAL = re.compile(r"^([^()]*)\(([^()]*)\)$")


def parse_word_literal(text: str, alphabet: Alphabet = FULL_ALPHABET) -> EventuallyPeriodicWord:
    compact = "".join(text.split())
    m = _LITERAL.match(compact)
    if not m:
        raise LiteralError(f"malformed literal {text!r}; expected PRE(PER)")
    pre, per = m.groups()
    if not per:
        raise LiteralError(f"empty period in literal {text!r}")
    alphabet.check(pre + per)
    return EventuallyPeriodicWord(pre, per)


def ep(text: str) -> EventuallyPeriodicWord:
    """Shorthand for :func:`parse_word_literal` over the full symbol set."""
    return parse_word_literal(text)


def prefix(s: SymbolStream, length: int) -> str:
    if length < 0:
        raise DomainError("prefix length must be nonnegative")
    return s.prefix(length)


def shift_stream(s: SymbolStream, k: int) -> SymbolStream:
    if k < 0:
        raise DomainError("shift count must be nonnegative")
    return s.shift(k)


def same_point(a: SymbolStream, b: SymbolStream, depth: int = DEFAULT_DEPTH) -> bool:
    """Exact equality for eventually periodic pairs, prefix equality to ``depth`` otherwise."""
    if isinstance(a, EventuallyPeriodicWord) and isinstance(b, EventuallyPeriodicWord):
        return a == b
    return a.prefix(depth) == b.prefix(depth)


def _diff_bits(xs: str, ys: str) -> int:
    """Integer whose binary digits (MSB first) mark the mismatches of xs and ys."""
    if not xs:
        return 0
    return int("".join("0" if a == b else "1" for a, b in zip(xs, ys)), 2)


def _check_alphabet(alphabet: Optional[Alphabet], *words: EventuallyPeriodicWord) -> None:
    if alphabet is None:
        return
    for w in words:
        try:
            alphabet.check(w.preperiod + w.period)
        except AlphabetError as exc:
            raise AlphabetError(f"alphabet mismatch: {w.literal()} ({exc})") from None


def d1_exact(x: EventuallyPeriodicWord, y: EventuallyPeriodicWord,
             alphabet: Optional[Alphabet] = None) -> Fraction:
    """Exact D1 distance, sum of 2^-i over the indices where x and y differ."""
    if not (isinstance(x, EventuallyPeriodicWord) and isinstance(y, EventuallyPeriodicWord)):
        raise DomainError("d1_exact needs eventually periodic words; use d1_bounded")
    _check_alphabet(alphabet, x, y)
    p = max(len(x.preperiod), len(y.preperiod))
    ell = lcm(len(x.period), len(y.period))
    xs, ys = x.prefix(p + ell), y.prefix(p + ell)
    head = _diff_bits(xs[:p], ys[:p])   # sum d_i 2^(p-1-i)
    cyc = _diff_bits(xs[p:], ys[p:])    # sum d_(p+i) 2^(ell-1-i)
    # head/2^(p-1) + 2^-p * (cyc/2^(ell-1)) / (1 - 2^-ell)
    return Fraction(2 * (head * ((1 << ell) - 1) + cyc), (1 << p) * ((1 << ell) - 1))


def d1_bounded(x: SymbolStream, y: SymbolStream, depth: int) -> Interval:
    """Bracket [lo, hi] on D1 from the first ``depth`` symbols; hi - lo = 2^-(depth-1)."""
    if depth < 1:
        raise DomainError("depth must be at least 1")
    lo = Fraction(2 * _diff_bits(x.prefix(depth), y.prefix(depth)), 1 << depth)
    return lo, lo + Fraction(1, 1 << (depth - 1))
