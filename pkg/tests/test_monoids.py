import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subatomic import monoids as M
from subatomic.monoids import ALPHA, MonoidId, S4Elem, SeqElem, const, e
from subatomic.verdict import DEFAULT_BOUNDS


@pytest.mark.parametrize("n,m,p", [(1, 1, 3), (1, 3, 7), (2, 1, 5)])
def test_pairing_prime_examples(n, m, p):
    assert M.pairing_prime(n, m) == p


def test_pairing_prime_injective_and_odd():
    seen = {}
    for n in range(1, 9):
        for m in range(1, 16, 2):
            p = M.pairing_prime(n, m)
            assert p % 2 == 1 and p not in seen
            seen[p] = (n, m)
            assert M.pairing_inverse(p) == (n, m)


def test_pairing_prime_rejects_even_m():
    with pytest.raises(ValueError):
        M.pairing_prime(1, 2)


def test_s4_membership_examples():
    v = M.s4_membership(S4Elem(0, Fraction(3, 8)))
    assert v.holds and v.certificate["multiset"] == {("dyadic", 3): 3}
    v = M.s4_membership(ALPHA + S4Elem(0, Fraction(1, 2)))
    assert v.holds and v.certificate["multiset"] == {("alpha",): 1, ("dyadic", 1): 1}
    assert M.s4_membership(S4Elem(Fraction(1, 2), 0)).refuted


def test_s4_membership_matches_generator_sums():
    gens = [ALPHA] + [M.dyadic(k) for k in range(0, 4)] + [
        M.pairing_generator(n, m) for n in range(1, 3) for m in (1, 3)]
    sums = set()
    for r in range(1, 4):
        for combo in itertools.combinations_with_replacement(gens, r):
            t = combo[0]
            for g in combo[1:]:
                t = t + g
            sums.add(t)
    for t in sums:
        assert M.s4_in(t), t


@pytest.mark.parametrize("b,q", [
    (S4Elem(0, Fraction(5, 4)), Fraction(5, 4)),
    (ALPHA + S4Elem(0, Fraction(1, 2)), Fraction(1, 2)),
    (M.pairing_generator(1, 1), Fraction(0)),
])
def test_min_rational_subtract(b, q):
    assert M.s4_min_rational_subtract(b) == q


def test_min_rational_subtract_rejects_nonmember():
    with pytest.raises(ValueError):
        M.s4_min_rational_subtract(S4Elem(Fraction(1, 2), 0))


def test_seq_membership_examples():
    assert M.seq_membership(e(1, 7)).holds
    assert M.seq_membership(const(3)).holds
    assert M.seq_membership(e(1)).refuted


def test_seq_text_round_trip():
    for t in [e(1, 7), const(3), SeqElem.make(5, {2: 9, 4: 0})]:
        assert M.parse_seq(str(t)) == t


def test_atoms_examples():
    assert M.atoms_up_to(MonoidId.QPLUS) == []
    atoms = M.atoms_up_to(MonoidId.APPENDIX_A, DEFAULT_BOUNDS.with_(index_bound=2))
    assert e(1, 7) in atoms and e(2, 7) in atoms and const(3) in atoms
    assert e(1, 14) not in atoms


@pytest.mark.parametrize("t,expected", [
    (e(3, 7), True),
    (SeqElem.make(5, {1: 6, 2: 0}), True),
    (SeqElem.make(3, {1: 9}), False),
])
def test_atom_characterization_examples(t, expected):
    assert M.seq_atom_characterization(t) is expected


def test_atom_characterization_matches_bruteforce_small():
    for t in M.seq_universe(2, 14, [0, 3, 5, 6, 7]):
        if M.seq_in(t):
            assert M.seq_atom_characterization(t) == M.seq_is_atom_bruteforce(t, 2), t


def test_span_examples():
    six = SeqElem.make(6, {1: 2})
    v = M.seq_in_M_span(six)
    assert v.holds and M.check_atom_sum(six, v.certificate["atoms"])
    assert M.seq_in_M_span(SeqElem.make(7, {1: 0})).refuted
    v = M.seq_in_M_span(e(1, 14))
    assert v.certificate["atoms"] == [e(1, 7), e(1, 7)]


def test_factorizations_examples():
    assert M.monoid_factorizations(MonoidId.APPENDIX_A, e(1, 7)) == [(e(1, 7),)]
    assert M.monoid_factorizations(MonoidId.APPENDIX_A, const(7)) == []
    assert M.monoid_factorizations(MonoidId.QPLUS, Fraction(1)) == []


seq_st = st.builds(
    lambda lim, vals: SeqElem.make(lim, dict(enumerate(vals, start=1))),
    st.sampled_from([0, 3, 5, 6, 7, 8, 10]),
    st.lists(st.integers(0, 14), max_size=3),
)


@settings(max_examples=150, deadline=None)
@given(seq_st, seq_st)
def test_membership_is_additive(u, v):
    if M.seq_in(u) and M.seq_in(v):
        assert M.seq_in(u + v)
        su = M.seq_membership(u).certificate["summands"]
        sv = M.seq_membership(v).certificate["summands"]
        assert M.check_generator_sum(u + v, list(su) + list(sv))


@settings(max_examples=150, deadline=None)
@given(seq_st)
def test_span_certificates_reverify(t):
    if not M.seq_in(t):
        return
    v = M.seq_in_M_span(t)
    if t.limit == 7:
        assert v.refuted
    else:
        atoms = v.certificate["atoms"]
        assert M.check_atom_sum(t, atoms)
        assert all(M.seq_atom_characterization(a) for a in atoms)
