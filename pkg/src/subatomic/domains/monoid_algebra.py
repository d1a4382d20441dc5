"""Monoid algebras F2[X; S] localized at the monomial maximal ideal.

Elements of monomial type ``x^t * u`` (``u`` a unit, i.e. constant term 1)
are handled exactly: divisibility and factorization reduce to the additive
monoid ``S``.  Other elements are reported as undecided.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any

from .. import monoids as M
from ..monoids import ALPHA, S4_ZERO, SEQ_ZERO, S4Elem, SeqElem
from ..poly import GenPoly
from ..verdict import DEFAULT_BOUNDS, SearchBounds, Verdict, holds, refuted, unknown
from .base import (Domain, DomainId, divisor_cert, factorization_cert, irreducible_cert,
                   multiplier_cert, split_cert, structural_cert)


class ExponentMonoid:
    """Additive monoid interface used by the algebra adapter."""

    zero: Any

    def contains(self, t: Any) -> bool:
        raise NotImplementedError

    def is_atom(self, t: Any) -> bool:
        raise NotImplementedError

    def split(self, t: Any) -> tuple[Any, Any]:
        """``t = u + v`` with both nonzero, for a non-atom ``t``."""
        raise NotImplementedError

    def factorization(self, t: Any) -> list | str:
        """Atoms summing to ``t``, or the reason none exist."""
        raise NotImplementedError

    def atom_divisor(self, t: Any) -> Any | None:
        """An atom ``a`` with ``t - a`` in S or zero, or None."""
        fac = self.factorization(t)
        return None if isinstance(fac, str) else fac[0]

    def sub_ok(self, t: Any, u: Any) -> bool:
        try:
            d = t - u
        except ValueError:
            return False
        return self.is_zero(d) or self.contains(d)

    def is_zero(self, t: Any) -> bool:
        return t == self.zero


class QPlusMonoid(ExponentMonoid):
    zero = Fraction(0)

    def contains(self, t: Any) -> bool:
        return isinstance(t, (int, Fraction)) and t > 0

    def is_atom(self, t: Any) -> bool:
        return False

    def split(self, t: Any) -> tuple[Any, Any]:
        return Fraction(t) / 2, Fraction(t) / 2

    def factorization(self, t: Any) -> list | str:
        return "no atoms: every positive rational is twice a positive rational"


class SectionFourMonoid(ExponentMonoid):
    zero = S4_ZERO

    def contains(self, t: Any) -> bool:
        return isinstance(t, S4Elem) and not t.is_zero() and M.s4_in(t)

    def is_atom(self, t: Any) -> bool:
        return M.s4_is_atom(t)

    def split(self, t: Any) -> tuple[Any, Any]:
        dec = M.s4_decompose(t)
        assert not isinstance(dec, str)
        if dec.dyadic_rest:
            half = S4Elem(0, dec.dyadic_rest / 2)
            return half, t - half
        if dec.alpha_count:
            return ALPHA, t - ALPHA
        (n, m), _ = next(f for f in dec.forced if f[1])
        g = M.pairing_generator(n, m)
        return g, t - g

    def factorization(self, t: Any) -> list | str:
        fac = M.s4_atomic_factorization(t)
        if fac is None:
            dec = M.s4_decompose(t)
            return (f"rational remainder {dec.dyadic_rest} needs "
                    f"{len(M.s4_split_dyadic(dec.dyadic_rest))} trades but only "
                    f"{dec.alpha_count} alphas are free")
        out = []
        for a in sorted(fac, key=lambda a: (a.value, a.alpha_coeff)):
            out += [a] * fac[a]
        return out

    def atom_divisor(self, t: Any) -> Any | None:
        dec = M.s4_decompose(t)
        if isinstance(dec, str):
            return None
        for (n, m), c in dec.forced:
            if c:
                return M.pairing_generator(n, m)
        if dec.alpha_count:
            return ALPHA
        return None


class SequenceMonoid(ExponentMonoid):
    zero = SEQ_ZERO

    def contains(self, t: Any) -> bool:
        return isinstance(t, SeqElem) and not t.is_zero() and M.seq_in(t)

    def is_atom(self, t: Any) -> bool:
        return M.seq_atom_characterization(t)

    def split(self, t: Any) -> tuple[Any, Any]:
        if t.limit == 7:
            n = next(i for i in range(1, t.max_index() + 2) if t[i] >= 7)
            return M.e(n, 7), t - M.e(n, 7)
        atoms = M.seq_in_M_span(t).certificate["atoms"]
        return atoms[0], t - atoms[0]

    def factorization(self, t: Any) -> list | str:
        v = M.seq_in_M_span(t)
        if v.refuted:
            return "limit 7 is not of the form 3x + 5y"
        return sorted(v.certificate["atoms"], key=SeqElem.sort_key)

    def atom_divisor(self, t: Any) -> Any | None:
        if t.limit == 7:
            return self.split(t)[0]
        return super().atom_divisor(t)


class MonoidAlgebra(Domain):
    monoid: ExponentMonoid

    def one(self) -> GenPoly:
        return GenPoly({self.monoid.zero: 1}, modulus=2)

    def mono(self, t: Any) -> GenPoly:
        return GenPoly({t: 1}, modulus=2)

    def contains(self, f: GenPoly) -> bool:
        if f.modulus != 2:
            return False
        return all(self.monoid.is_zero(e) or self.monoid.contains(e) for e in f.terms)

    def is_unit(self, f: GenPoly) -> bool:
        if f.is_zero():
            raise ValueError("zero element")
        return f.coeff(self.monoid.zero) != 0

    def monomial_part(self, f: GenPoly) -> tuple[Any, GenPoly] | None:
        """``(t, u)`` with ``f = x^t * u`` and ``u`` a unit, when it exists."""
        for t in f.exponents():
            if all(e == t or self.monoid.sub_ok(e, t) for e in f.terms):
                u = GenPoly({e - t if e != t else self.monoid.zero: c for e, c in f.items()},
                            modulus=2)
                return t, u
        return None

    def divides(self, d: GenPoly, g: GenPoly) -> bool:
        md, mg = self.monomial_part(d), self.monomial_part(g)
        if md is None or mg is None:
            raise NotImplementedError("divisibility of non-monomial-type elements")
        return self.monoid.sub_ok(mg[0], md[0])

    def _mp(self, f: GenPoly, bounds: SearchBounds):
        mp = self.monomial_part(f)
        if mp is None:
            return None, unknown(bounds, "element is not a monomial times a unit", element=f)
        return mp, None

    def is_irreducible(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        mp, bad = self._mp(f, bounds)
        if bad:
            return bad
        t, u = mp
        if self.monoid.is_atom(t):
            return holds(irreducible_cert("atom_exponent", f), "exponent is an atom of S",
                         bounds, structural=True)
        a, b = self.monoid.split(t)
        return refuted(split_cert(f, self.mono(a) * u, self.mono(b)),
                       "exponent splits in S", bounds, structural=True)

    def is_atomic_elem(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        mp, bad = self._mp(f, bounds)
        if bad:
            return bad
        t, u = mp
        fac = self.monoid.factorization(t)
        if isinstance(fac, str):
            return refuted(structural_cert("no_atom_sum", f, reason=fac,
                                           no_irreducible_divisor=self.monoid.atom_divisor(t)
                                           is None),
                           fac, bounds, structural=True)
        factors = [self.mono(a) for a in fac]
        factors[0] = factors[0] * u
        return holds(factorization_cert(f, factors), "atom sum of the exponent", bounds,
                     structural=True)

    def divisors_up_to(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        mp = self.monomial_part(f)
        if mp is None:
            raise NotImplementedError("divisors of non-monomial-type elements")
        t, _ = mp
        out = [self.mono(s) for s in self.exponent_candidates(t, bounds)
               if self.monoid.contains(s) and s != t and self.monoid.sub_ok(t, s)]
        return sorted(set(out), key=GenPoly.sort_key)

    def exponent_candidates(self, t: Any, bounds: SearchBounds) -> list:
        raise NotImplementedError

    def furstenberg_divisor(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        mp, bad = self._mp(f, bounds)
        if bad:
            return bad
        t, u = mp
        a = self.monoid.atom_divisor(t)
        if a is None:
            return refuted(structural_cert("no_atom_divisor", f, no_irreducible_divisor=True),
                           "no atom of S lies below the exponent", bounds, structural=True)
        rest = t - a
        cof = (self.mono(rest) if not self.monoid.is_zero(rest) else self.one()) * u
        return holds(divisor_cert(f, self.mono(a), cof), "atom below the exponent", bounds,
                     structural=True)

    def semi_atomic_multiplier(self) -> list[GenPoly] | None:
        return None

    def almost_atomic_witness_search(self, f: GenPoly,
                                     bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        v = self.is_atomic_elem(f, bounds)
        if v.holds:
            return holds(multiplier_cert(f, self.one(), [], v), "already atomic", bounds, True)
        facs = self.semi_atomic_multiplier()
        if v.unknown or facs is None:
            return unknown(bounds, "no multiplier available", element=f)
        m = self.one()
        for p in facs:
            m = m * p
        w = self.is_atomic_elem(f * m, bounds)
        if not w.holds:
            return unknown(bounds, "multiplied element not atomic", element=f)
        return holds(multiplier_cert(f, m, facs, w), "semi-atomic witness as multiplier", bounds,
                     structural=True)

    def check_semi_furstenberg(self, beta: GenPoly, samples: list[GenPoly],
                               bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        return super().check_semi_furstenberg(beta, samples, bounds)

    def verify_structural(self, cert: dict[str, Any]) -> bool:
        f = cert["element"]
        if not self.contains(f) or self.is_unit(f):
            return False
        mp = self.monomial_part(f)
        if mp is None:
            return False
        t, _ = mp
        rule = cert["rule"]
        if rule == "atom_exponent":
            return self.monoid.is_atom(t)
        if rule == "no_atom_sum":
            return isinstance(self.monoid.factorization(t), str)
        if rule == "no_atom_divisor":
            return self.monoid.atom_divisor(t) is None
        return False

    def min_exponent_decompose(self, f: GenPoly) -> tuple[Any, GenPoly]:
        raise ValueError(f"{self.id.value} has no minimal-exponent decomposition")


class MAQPlus(MonoidAlgebra):
    id = DomainId.MA_QPLUS
    description = "F2[X; Q>=0] localized"
    monoid = QPlusMonoid()

    def mono(self, t: Any) -> GenPoly:
        return GenPoly({Fraction(t): 1}, modulus=2)

    def check_antimatter(self, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        samples = [Fraction(n, d) for d in range(1, bounds.max_denominator + 1)
                   for n in range(1, bounds.max_coeff_height + 1)]
        return holds(structural_cert("halving", self.mono(1), exponents=sorted(set(samples))),
                     "x^t = x^(t/2) * x^(t/2) for every t > 0", bounds, structural=True)

    def irreducible_example(self) -> GenPoly:
        raise ValueError("the algebra has no irreducible elements")

    def exponent_candidates(self, t: Any, bounds: SearchBounds) -> list:
        t = Fraction(t)
        dens = {t.denominator * k for k in range(1, bounds.max_denominator + 1)}
        return sorted({Fraction(n, d) for d in dens for n in range(1, int(t * d))})

    def verify_structural(self, cert: dict[str, Any]) -> bool:
        if cert["rule"] == "halving":
            for t in cert["exponents"]:
                h = self.mono(Fraction(t) / 2)
                if not (Fraction(t) > 0 and h * h == self.mono(t) and not self.is_unit(h)):
                    return False
            return True
        return super().verify_structural(cert)

    def check_semi_furstenberg(self, beta: GenPoly, samples: list[GenPoly],
                               bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        return refuted(self.check_antimatter(bounds).certificate,
                       "no irreducible elements at all", bounds, structural=True)

    def sample_universe(self, rng: random.Random, count: int,
                        bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        out = [self.mono(Fraction(1, 2)), self.mono(1),
               self.mono(Fraction(2, 3)) + self.mono(Fraction(5, 3))]
        while len(out) < count:
            t = Fraction(rng.randint(1, 20), rng.randint(1, bounds.max_denominator))
            out.append(self.mono(t))
        return out


class MASectionFour(MonoidAlgebra):
    id = DomainId.MA_S4
    description = "F2[X; S] localized, S generated by alpha, dyadics and prime-pairing elements"
    monoid = SectionFourMonoid()

    def irreducible_example(self) -> GenPoly:
        return self.mono(ALPHA)

    def semi_atomic_witness(self) -> GenPoly:
        # x^alpha alone fails on x^1: alpha + 1 needs two pairing trades
        return self.mono(ALPHA * 2)

    def semi_atomic_multiplier(self) -> list[GenPoly]:
        return [self.mono(ALPHA), self.mono(ALPHA)]

    def semi_furstenberg_beta(self) -> GenPoly:
        return self.semi_atomic_witness()

    def min_exponent_decompose(self, f: GenPoly) -> tuple[Fraction, GenPoly]:
        if f.is_zero():
            raise ValueError("zero element")
        qs = [Fraction(0) if e.is_zero() else M.s4_min_rational_subtract(e) for e in f.terms]
        q = min(qs)
        shift = S4Elem(0, q)
        return q, GenPoly({e - shift: c for e, c in f.items()}, modulus=2)

    def exponent_candidates(self, t: Any, bounds: SearchBounds) -> list:
        gens = [ALPHA] + [M.dyadic(k) for k in range(0, bounds.max_denominator + 1)] + [
            M.pairing_generator(n, m) for n in range(1, bounds.index_bound + 1)
            for m in range(1, 2 * bounds.index_bound, 2)]
        out = set(gens)
        for a in gens:
            for b in gens:
                out.add(a + b)
        dec = M.s4_decompose(t)
        if not isinstance(dec, str) and dec.dyadic_rest:
            d = dec.dyadic_rest
            for k in range(1, d.numerator * 2 ** bounds.max_denominator):
                out.add(t - S4Elem(0, Fraction(k, d.denominator * 2 ** bounds.max_denominator)))
        return sorted(s for s in out if M.s4_in(s))

    def sample_universe(self, rng: random.Random, count: int,
                        bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        exps = [ALPHA, S4Elem(0, Fraction(1, 2)), S4Elem(0, 1), S4Elem(1, Fraction(1, 2)),
                M.pairing_generator(1, 1), S4Elem(0, Fraction(3, 8))]
        while len(exps) < count:
            t = S4_ZERO
            for _ in range(rng.randint(1, 4)):
                r = rng.random()
                if r < 0.3:
                    t = t + ALPHA
                elif r < 0.7:
                    t = t + M.dyadic(rng.randint(0, 3)) * rng.randint(1, 3)
                else:
                    t = t + M.pairing_generator(rng.randint(1, 2), rng.choice([1, 3]))
            exps.append(t)
        return [self.mono(t) for t in exps]


class MAAppendixA(MonoidAlgebra):
    id = DomainId.MA_APPA
    description = "F2[X; S] localized, S of eventually-constant sequences"
    monoid = SequenceMonoid()

    def irreducible_example(self) -> GenPoly:
        return self.mono(M.e(1, 7))

    def semi_atomic_witness(self) -> GenPoly:
        return self.mono(M.const(3))

    def semi_atomic_multiplier(self) -> list[GenPoly]:
        return [self.mono(M.const(3))]

    def semi_furstenberg_beta(self) -> GenPoly:
        return self.semi_atomic_witness()

    def min_exponent_decompose(self, f: GenPoly) -> tuple[SeqElem, GenPoly]:
        if f.is_zero():
            raise ValueError("zero element")
        mp = self.monomial_part(f)
        if mp is None:
            raise ValueError("only elements of the form x^t * unit are supported")
        t, u = mp
        if t.is_zero() or t.limit != 7:
            return SEQ_ZERO, f
        m, beta = self.monoid.split(t)
        return beta, self.mono(m) * u

    def exponent_candidates(self, t: Any, bounds: SearchBounds) -> list:
        box = list(range(1, max(bounds.index_bound, t.max_index()) + 1))
        return M.seq_atoms_in_box(t, box) + [t - a for a in M.seq_atoms_in_box(t, box)
                                             if t.can_subtract(a)]

    def sample_universe(self, rng: random.Random, count: int,
                        bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        exps = [M.e(1, 7), M.const(3), M.const(6), M.const(7), M.e(2, 14) + M.const(7)]
        while len(exps) < count:
            exps.append(random_seq_in_s(rng, rng.choice([0, 3, 5, 6, 7, 8, 9, 10, 12, 14]), 4))
        return [self.mono(t) for t in exps]


def random_seq_in_s(rng: random.Random, limit: int, index_bound: int,
                    entry_bound: int = 14) -> SeqElem:
    """Random element of the sequence monoid with the given limit."""
    while True:
        entries = {}
        for i in range(1, index_bound + 1):
            if rng.random() < 0.6:
                if limit in (0, 7):
                    entries[i] = 7 * rng.randint(0, entry_bound // 7)
                else:
                    entries[i] = rng.randint(0, entry_bound)
        t = SeqElem.make(limit, entries)
        if not t.is_zero() and M.seq_in(t):
            return t
