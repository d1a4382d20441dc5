from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from subatomic.exact import QLin
from subatomic.poly import XY, GenPoly, parse_poly

F = Fraction
rats = st.fractions(min_value=-50, max_value=50, max_denominator=12)
exps = st.fractions(min_value=0, max_value=6, max_denominator=6)
polys = st.dictionaries(exps, rats.filter(lambda q: q != 0), max_size=4).map(GenPoly)


def test_parse_examples():
    f = parse_poly("1/2*x^(2) + (1 + 2*sqrt2)*x^(3)", integer_exps=True)
    assert f.coeff(2) == F(1, 2) and f.coeff(3) == QLin(1, 2)
    g = parse_poly("1*x^(-1)*y^(2) + 1*x^(1/2)*y^(0)", two_var=True, modulus=2)
    assert g.min_exp() == XY(0, F(1, 2))


def test_xy_order_is_k_first():
    assert XY(1, F(5)) < XY(2, F(-3))
    assert XY(2, F(-3)) < XY(2, F(1))


def test_mod2_cancellation():
    a = GenPoly({XY(1, F(0)): 1}, modulus=2)
    assert (a + a).is_zero()


@settings(max_examples=200, deadline=None)
@given(polys)
def test_text_round_trip(f):
    assert parse_poly(str(f)) == f


@settings(max_examples=200, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
