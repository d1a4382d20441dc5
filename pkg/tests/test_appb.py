import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subatomic.domains import appb_atomic_by_corollary, appb_minimal_term, appb_witness, get_domain
from subatomic.domains.appb import corollary_level, mono, random_appb
from subatomic.poly import parse_poly

F = Fraction
R = get_domain("appb")


def p(text):
    return parse_poly(text, two_var=True, modulus=2)


def test_minimal_term_examples():
    assert appb_minimal_term(p("1*x^(0)*y^(2) + 1*x^(1)*y^(1)")) == (1, 1)
    assert appb_minimal_term(p("1*x^(3)*y^(2) + 1*x^(-1)*y^(2)")) == (-1, 2)
    assert appb_minimal_term(p("1*x^(0)*y^(1) + 1*x^(1/2)*y^(0)")) == (F(1, 2), 0)


@pytest.mark.parametrize("text,mult,case", [
    ("1*x^(-1)*y^(2)", "1*x^(0)*y^(1) + 1*x^(1)*y^(0)", 2),
    ("1*x^(0)*y^(3)", "1*x^(0)*y^(0)", 1),
    ("1*x^(1)*y^(1) + 1*x^(-1)*y^(2)", "1*x^(0)*y^(1) + 1*x^(1)*y^(0)", 4),
    ("1*x^(1)*y^(0)", "1*x^(0)*y^(1) + 1*x^(-1)*y^(2)", 3),
])
def test_witness_examples(text, mult, case):
    f = p(text)
    m, c = appb_witness(f)
    assert (m, c) == (p(mult), case)
    assert corollary_level(f * m) is not None


def test_witness_case3_cancellation():
    # y * y^(k+1) would cancel the y^(k+2) term, but f is already in shape
    f = p("1*x^(1)*y^(1) + 1*x^(0)*y^(2)")
    m, c = appb_witness(f)
    assert c == 3 and m == R.one()
    assert corollary_level(f) == 1


def test_witness_rejects_units():
    with pytest.raises(ValueError):
        appb_witness(R.one() + mono(1, 0))


def test_corollary_examples():
    v = appb_atomic_by_corollary(p("1*x^(0)*y^(2) + 1*x^(1)*y^(1)"))
    assert v.holds and v.certificate["factors"] == [mono(0, 1), p("1*x^(0)*y^(1) + 1*x^(1)*y^(0)")]
    assert appb_atomic_by_corollary(mono(F(1, 2), 0)).unknown
    v = appb_atomic_by_corollary(mono(0, 1))
    assert v.holds and v.certificate["factors"] == [mono(0, 1)]


def test_every_element_without_y_has_an_irreducible_divisor():
    # (y + x^c)^2 = x^(2c) (1 + x^(-2c) y^2) over F2
    f = mono(1, 0)
    v = R.furstenberg_divisor(f)
    assert v.holds and R.check_certificate(v)
    pi, h, u = v.certificate["divisor"], v.certificate["cofactor"], v.certificate["unit"]
    assert pi == p("1*x^(0)*y^(1) + 1*x^(1/2)*y^(0)")
    assert pi * h == f * u and R.is_unit(u)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9))
def test_random_witness_shapes(seed):
    f = random_appb(random.Random(seed), 4, 4, 3)
    if R.is_unit(f):
        return
    m, _ = appb_witness(f)
    assert corollary_level(f * m) is not None
    v = R.almost_atomic_witness_search(f)
    assert v.holds and R.check_certificate(v)
    w = R.furstenberg_divisor(f)
    assert w.holds and R.check_certificate(w)
