from fractions import Fraction

import pytest

from subatomic import domains as D
from subatomic.domains import DomainId
from subatomic.exact import QLin
from subatomic.monoids import ALPHA, S4Elem, SeqElem, const, e
from subatomic.poly import GenPoly, parse_poly

F = Fraction


def poly(terms):
    return GenPoly(terms)


def frac_poly(terms):
    return GenPoly({F(k): F(v) for k, v in terms.items()})


X = poly({1: 1})


# --- units -------------------------------------------------------------------

def test_is_unit_examples():
    assert D.is_unit("d23", poly({0: 1}))
    ma = D.get_domain("ma_qplus")
    assert D.is_unit("ma_qplus", ma.mono(0) + ma.mono(F(1, 2)))
    assert not D.is_unit("d8", poly({0: 2}))


def test_is_unit_rejects_zero():
    with pytest.raises(ValueError):
        D.is_unit("d8", GenPoly({}))


def test_unknown_domain_tag():
    with pytest.raises(ValueError, match="valid tags"):
        D.get_domain("bogus")


# --- irreducibility ----------------------------------------------------------

def test_irreducible_examples():
    v = D.is_irreducible("d23", poly({0: 5}))
    assert v.holds and D.check_certificate("d23", v)
    appb = D.get_domain("appb")
    f = parse_poly("1*x^(0)*y^(1) + 1*x^(1/2)*y^(0)", two_var=True, modulus=2)
    assert D.is_irreducible("appb", f).holds
    v = D.is_irreducible("d24", frac_poly({F(1, 2): 1}))
    assert v.refuted
    assert v.certificate["left"] == frac_poly({F(1, 4): 1})
    assert v.certificate["right"] == frac_poly({F(1, 4): 1})


def test_irreducible_rejects_units():
    with pytest.raises(ValueError):
        D.is_irreducible("d23", poly({0: 1}))


def test_d23_irreducible_closed_forms():
    assert D.is_irreducible("d23", poly({0: 1, 1: 1})).holds
    assert D.is_irreducible("d23", poly({0: 6, 1: 1})).refuted
    assert D.is_irreducible("d23", poly({0: 1, 2: -1})).refuted  # (1-x)(1+x)
    assert D.is_irreducible("d23", X).refuted


def test_d12_composite_constant_can_still_be_irreducible():
    # 9 + x has no split at the searched heights; 8 + x does
    d12 = D.get_domain("d12")
    assert D.is_irreducible("d12", frac_poly({0: 8, 1: 1})).refuted
    assert not D.is_irreducible("d12", frac_poly({0: 9, 1: 1})).refuted
    assert D.is_irreducible("d12", frac_poly({0: 7, 1: 1})).holds


# --- divisors ----------------------------------------------------------------

def test_divisors_examples():
    divs = D.divisors_up_to("d23", X)
    for p in (2, 3, 5, 7, 11, 13, 17, 19):
        assert poly({0: p}) in divs
    assert X in D.divisors_up_to("d8", poly({2: 1}))
    ma = D.get_domain("ma_qplus")
    assert ma.mono(F(1, 4)) in D.divisors_up_to("ma_qplus", ma.mono(F(1, 2)))


@pytest.mark.parametrize("tag,f", [
    ("d8", poly({0: 6, 1: 3, 2: F(1, 2)})),
    ("d23", poly({0: 6, 1: F(1, 2)})),
    ("d8", poly({2: 1})),
])
def test_divisor_round_trip(tag, f):
    d = D.get_domain(tag)
    for g in D.divisors_up_to(tag, f):
        q = d.quotient(f, g)
        assert q is not None and d.contains(q) and g * q == f


# --- atomicity ---------------------------------------------------------------

def test_atomic_examples():
    v = D.is_atomic_elem("d8", poly({2: F(1, 2)}))
    assert v.refuted and v.structural
    v = D.is_atomic_elem("d8", poly({2: 1}))
    assert v.holds and v.certificate["factors"] == [X, X]
    assert D.check_certificate("d8", v)
    ma = D.get_domain("ma_appa")
    assert D.is_atomic_elem("ma_appa", ma.mono(const(7))).refuted


def test_example8_length_bound_on_fixed_input():
    f = poly({3: F(15, 4), 5: 1})
    v = D.almost_atomic_witness_search("d8", f)
    assert v.holds and v.certificate["multiplier"] == poly({0: 4})
    facs = v.certificate["product"].certificate["factors"]
    # 4f = x^2 * (15x + 4x^3): omega(15) + deg(g) + 1 = 2 + 3 + 1
    assert len(facs) - 2 <= 6


# --- monoid algebra decompositions ------------------------------------------

def test_min_exponent_decompose_examples():
    s4 = D.get_domain("ma_s4")
    q, g = D.min_exponent_decompose("ma_s4", s4.mono(ALPHA + S4Elem(0, F(1, 2))))
    assert q == F(1, 2) and g == s4.mono(ALPHA)
    appa = D.get_domain("ma_appa")
    f = appa.mono(e(1, 7))
    assert D.min_exponent_decompose("ma_appa", f) == (SeqElem.make(0), f)
    beta = SeqElem.make(7, {1: 0})
    f = appa.mono(beta + e(2, 7))
    b, g = D.min_exponent_decompose("ma_appa", f)
    assert b.limit == 7 and appa.mono(b) * g == f
    assert D.is_atomic_elem("ma_appa", g).holds
    # limit 10 is atomic, so nothing is split off
    f = appa.mono(beta + const(3))
    assert D.min_exponent_decompose("ma_appa", f) == (SeqElem.make(0), f)


def test_min_exponent_decompose_rejects_other_domains():
    with pytest.raises(ValueError):
        D.min_exponent_decompose("d8", X)


def test_semi_atomic_witnesses():
    s4 = D.get_domain("ma_s4")
    # x^alpha alone misses x^1; its square is the shipped witness
    assert D.semi_atomic_witness("ma_s4") == s4.mono(ALPHA * 2)
    appa = D.get_domain("ma_appa")
    assert D.semi_atomic_witness("ma_appa") == appa.mono(const(3))
    with pytest.raises(ValueError):
        D.semi_atomic_witness("d8")


def test_check_semi_atomic_examples():
    s4 = D.get_domain("ma_s4")
    samples = [s4.mono(S4Elem(0, F(m, 2 ** n))) for n in range(1, 4) for m in (1, 3)]
    v = D.check_semi_atomic("ma_s4", s4.mono(ALPHA), samples)
    assert v.holds and D.check_certificate("ma_s4", v)
    v = D.check_semi_atomic("d23", X, [X])
    assert v.refuted


def test_lemma6_transform_examples():
    s4 = D.get_domain("ma_s4")
    v = D.lemma6_transform("ma_s4", s4.mono(ALPHA))
    assert v.holds and v.certificate["square"] == s4.mono(ALPHA * 2)
    assert D.check_certificate("ma_s4", v)
    appa = D.get_domain("ma_appa")
    v = D.lemma6_transform("ma_appa", appa.mono(const(3)))
    assert v.holds and D.check_certificate("ma_appa", v)
    with pytest.raises(ValueError):
        D.lemma6_transform("ma_s4", s4.one())


# --- almost / quasi atomic ---------------------------------------------------

def test_almost_atomic_examples():
    v = D.almost_atomic_witness_search("d8", poly({2: F(1, 2)}))
    assert v.holds and v.certificate["multiplier"] == poly({0: 2})
    assert v.certificate["product"].certificate["factors"] == [X, X]
    d9 = D.get_domain("d9")
    v = D.almost_atomic_witness_search("d9", d9.normalize(GenPoly({2: QLin(0, 1)})))
    assert not v.holds
    appb = D.get_domain("appb")
    y3 = parse_poly("1*x^(0)*y^(3)", two_var=True, modulus=2)
    v = D.almost_atomic_witness_search("appb", y3)
    assert v.holds and v.certificate["multiplier"] == appb.one()


def test_quasi_atomic_examples():
    d9 = D.get_domain("d9")
    f = d9.normalize(GenPoly({2: QLin(0, 1)}))
    v = D.quasi_atomic_witness_search("d9", f)
    assert v.certificate["multiplier"] == d9.normalize(GenPoly({2: QLin(0, F(1, 2))}))
    assert len(v.certificate["product"].certificate["factors"]) == 4
    assert D.quasi_atomic_witness_search("d23", X).refuted
    v = D.quasi_atomic_witness_search("d8", poly({2: F(1, 2)}))
    assert v.holds and D.check_certificate("d8", v)


# --- Furstenberg family ------------------------------------------------------

def test_furstenberg_examples():
    v = D.furstenberg_divisor("d23", X)
    assert v.certificate["divisor"] == poly({0: 2})
    v = D.furstenberg_divisor("d23", poly({0: 6, 1: 1}))
    assert v.certificate["divisor"] == poly({0: 2}) and D.check_certificate("d23", v)
    s4 = D.get_domain("ma_s4")
    assert D.furstenberg_divisor("ma_s4", s4.mono(S4Elem(0, F(1, 2)))).refuted


def test_semi_furstenberg_examples():
    xf = frac_poly({1: 1})
    f = frac_poly({0: 6, 1: 1})
    v = D.check_semi_furstenberg("d12", xf, [f])
    div = v.certificate["results"][0].certificate["divisor"].certificate["divisor"]
    assert v.holds and div == frac_poly({0: 2})
    assert D.check_semi_furstenberg("d24", xf, [frac_poly({0: 3, 1: 1})]).refuted


def test_almost_furstenberg_examples():
    f = frac_poly({0: 6, 1: 1})
    v = D.check_almost_furstenberg("d12", f)
    assert v.holds and v.certificate["gammas"] == [frac_poly({0: 2, 1: 1})]
    assert D.check_certificate("d12", v)
    assert D.check_almost_furstenberg("d24", frac_poly({1: 1})).refuted
    v = D.check_almost_furstenberg("d23", poly({0: 1, 1: 1}))
    assert v.holds and D.check_certificate("d23", v)


def test_quasi_furstenberg_examples():
    assert D.check_quasi_furstenberg("d24", frac_poly({1: 1})).refuted
    v = D.check_quasi_furstenberg("d24", frac_poly({0: 6}))
    assert v.holds and D.check_certificate("d24", v)
    v = D.check_quasi_furstenberg("d12", frac_poly({0: 4, F(1, 2): 1}))
    assert v.holds


def test_antimatter_examples():
    v = D.check_antimatter("ma_qplus")
    assert v.holds and D.check_certificate("ma_qplus", v)
    for tag in ("d24", "d23"):
        v = D.check_antimatter(tag)
        assert v.refuted and v.certificate["element"] == D.get_domain(tag).const(2)


# --- certificates --------------------------------------------------------------

def test_check_certificate_examples():
    v = D.almost_atomic_witness_search("d8", poly({2: F(1, 2)}))
    assert D.check_certificate("d8", v)
    w = D.is_atomic_elem("d8", poly({2: 1}))
    w.certificate["factors"] = [X, poly({1: 2})]
    assert not D.check_certificate("d8", w)


def test_prime_ideal_instance_check():
    v = D.prime_ideal_instance_check("d23")
    assert v.holds and not v.structural
    with pytest.raises(ValueError):
        D.prime_ideal_instance_check("d24")


def test_every_sample_verdict_reverifies(rng):
    for tag in DomainId:
        d = D.get_domain(tag)
        for f in d.sample_universe(rng, 6)[:6]:
            for v in (d.is_irreducible(f), d.furstenberg_divisor(f)):
                if not v.unknown:
                    assert d.check_certificate(v), (tag, f, v.rule)
