from fractions import Fraction

import pytest

from hypershift.errors import AlphabetError, DomainError, LiteralError
from hypershift.sequences import (
    BINARY,
    Alphabet,
    Cylinder,
    EventuallyPeriodicWord,
    d1_bounded,
    d1_exact,
    ep,
    parse_word_literal,
    prefix,
    same_point,
    shift_stream,
)
from hypershift.witnesses import stream_from_spec

from oracles import d1_by_generating_sum, expand, fib_substitution


def test_parse_simple():
    x = parse_word_literal("0(1)")
    assert (x.preperiod, x.period) == ("0", "1")
    z = parse_word_literal("(0)")
    assert (z.preperiod, z.period) == ("", "0")


def test_parse_canonicalizes_against_expansion():
    x = parse_word_literal("01(1010)")
    assert x.prefix(64) == expand("01", "1010", 64)
    # primitive root of 1010 is 10; preperiod 01 cannot roll back since 1 != 0
    assert (x.preperiod, x.period) == ("01", "10")
    assert x.literal() == "01(10)"


@pytest.mark.parametrize("text,pre,per", [
    ("0(00)", "", "0"),
    ("1(01)", "", "10"),
    ("abc(bc)", "a", "bc"),
    ("0011(0101)", "001", "10"),
])
def test_preperiod_rollback(text, pre, per):
    x = parse_word_literal(text)
    p0, q0 = text[:text.index("(")], text[text.index("(") + 1:-1]
    assert x.prefix(64) == expand(p0, q0, 64)
    assert (x.preperiod, x.period) == (pre, per)


def test_round_trip():
    for text in ["(0)", "0(1)", "01(10)", "zz(a)", "12(123)"]:
        x = parse_word_literal(text)
        assert parse_word_literal(x.literal()) == x


@pytest.mark.parametrize("bad", ["01", "0()", "(0", "0)(1", "((0))", "0(1)2"])
def test_parse_malformed(bad):
    with pytest.raises(LiteralError):
        parse_word_literal(bad)


def test_parse_alphabet_errors():
    with pytest.raises(AlphabetError):
        parse_word_literal("2(1)", BINARY)
    with pytest.raises(AlphabetError):
        parse_word_literal("A(1)")


def test_empty_period_message():
    with pytest.raises(LiteralError, match="empty period"):
        parse_word_literal("01()")


def test_alphabet_validation():
    with pytest.raises(AlphabetError):
        Alphabet("")
    with pytest.raises(AlphabetError):
        Alphabet("00")
    assert BINARY.other("0") == "1"


def test_prefix_examples():
    assert prefix(ep("0(1)"), 4) == "0111"
    assert prefix(ep("0(1)"), 0) == ""
    fib = stream_from_spec("sturmian:fib")
    assert prefix(fib, 13) == fib_substitution(13) == "0100101001001"
    assert prefix(fib, 0) == ""


def test_prefix_consistent_with_symbol_at():
    for s in [ep("012(34)"), stream_from_spec("sturmian:fib"), stream_from_spec("wk:linear")]:
        p = s.prefix(50)
        assert all(p[i] == s.symbol_at(i) for i in range(50))


def test_shift_examples():
    assert ep("01(0)").shift(1).literal() == "1(0)"
    assert ep("(01)").shift(2) == ep("(01)")
    y = ep("(01)").shift(1)
    assert y.prefix(64) == ep("(01)").prefix(65)[1:]
    assert y == ep("(10)")


def test_shift_of_generator_stream():
    fib = stream_from_spec("sturmian:fib")
    s = shift_stream(fib, 5)
    assert s.prefix(30) == fib.prefix(35)[5:]
    assert shift_stream(s, 2).prefix(10) == fib.prefix(17)[7:]


def test_cylinder():
    c = Cylinder("01")
    assert c.contains(ep("01(0)")) and not c.contains(ep("(0)"))
    with pytest.raises(DomainError):
        Cylinder("")


def test_d1_exact_examples():
    assert d1_exact(ep("(0)"), ep("(0)")) == 0
    assert d1_exact(ep("(0)"), ep("(1)")) == 2
    assert d1_exact(ep("1(0)"), ep("(0)")) == 1


@pytest.mark.parametrize("a,b", [
    (("0", "1"), ("", "01")),
    (("", "001"), ("11", "10")),
    (("0101", "1"), ("", "0")),
    (("", "abc"), ("a", "bcab")),
])
def test_d1_exact_matches_generating_sum(a, b):
    x, y = EventuallyPeriodicWord(*a), EventuallyPeriodicWord(*b)
    assert d1_exact(x, y) == d1_by_generating_sum(*a, *b)


def test_d1_bounded_examples():
    fib = stream_from_spec("sturmian:fib")
    assert d1_bounded(fib, fib, 20) == (0, Fraction(1, 2 ** 19))
    assert d1_bounded(ep("(0)"), ep("(1)"), 10) == (2 - Fraction(1, 2 ** 9), 2)
    lo, _ = d1_bounded(fib, fib.shift(1), 3)
    assert lo >= 1


def test_d1_alphabet_mismatch():
    with pytest.raises(AlphabetError):
        d1_exact(ep("(2)"), ep("(0)"), BINARY)


def test_same_point():
    assert same_point(ep("0(00)"), ep("(0)"))
    fib = stream_from_spec("sturmian:fib")
    assert same_point(fib.shift(3), fib.shift(3), 40)
    assert not same_point(fib, fib.shift(1), 40)
