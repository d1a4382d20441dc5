from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subatomic.exact import SQRT2, QLin, parse_qlin, qlin_arith, qlin_cmp

rats = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)
qlins = st.builds(QLin, rats, rats)


def _mp(u: QLin):
    with mpmath.workprec(200):
        return (mpmath.mpf(u.rat.numerator) / u.rat.denominator
                + mpmath.mpf(u.irr.numerator) / u.irr.denominator * mpmath.sqrt(2))


def test_cmp_examples():
    assert qlin_cmp(QLin(0, 0), QLin(0, 0)) == 0
    assert qlin_cmp(SQRT2, QLin(1, 0)) == 1
    assert qlin_cmp(QLin(3, -2), QLin(0, 0)) == 1


def test_arith_examples():
    assert qlin_arith(QLin(1, 1), QLin(1, -1), "mul") == QLin(-1, 0)
    assert SQRT2 * SQRT2 == QLin(2, 0)
    inv = qlin_arith(QLin(1, 0), QLin(1, 1), "div")
    assert inv == QLin(-1, 1)
    assert inv * QLin(1, 1) == QLin(1, 0)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        qlin_arith(QLin(1, 0), QLin(0, 0), "div")


@settings(max_examples=400, deadline=None)
@given(qlins, qlins)
def test_cmp_matches_high_precision(u, v):
    with mpmath.workprec(200):
        diff = _mp(u) - _mp(v)
    expected = 0 if u == v else (1 if diff > 0 else -1)
    assert qlin_cmp(u, v) == expected


@settings(max_examples=200, deadline=None)
@given(qlins, qlins, qlins)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b:
        assert (a / b) * b == a


def test_text_round_trip():
    for u in [QLin(Fraction(1, 2), 0), QLin(0, Fraction(-3, 7)), QLin(5, 2)]:
        assert parse_qlin(str(u)) == u
