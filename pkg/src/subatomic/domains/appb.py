"""F2[X, y, Z] localized at (X, y, Z).

Terms are ``x^a y^k`` with ``a >= 0`` when ``k <= 1`` and any rational ``a``
when ``k >= 2``; polynomials with constant term 1 are units.  Exponents are
``XY(k, alpha)`` so the natural order is k first, then alpha.
"""

from __future__ import annotations

import functools
import itertools
import random
from fractions import Fraction
from typing import Any

from ..poly import XY, GenPoly
from ..verdict import DEFAULT_BOUNDS, SearchBounds, Verdict, holds, unknown
from .base import (Domain, DomainId, divisor_cert, factorization_cert, irreducible_cert,
                   multiplier_cert, refuted, split_cert)

Y = XY(1, Fraction(0))
ZERO = XY(0, Fraction(0))


def term_allowed(e: XY) -> bool:
    if e.k < 0:
        return False
    return e.k >= 2 or e.alpha >= 0


def xy(alpha: Any, k: int) -> XY:
    return XY(k, Fraction(alpha))


def mono(alpha: Any, k: int) -> GenPoly:
    return GenPoly({xy(alpha, k): 1}, modulus=2)


def appb_minimal_term(f: GenPoly) -> tuple[Fraction, int]:
    """``(alpha, k)`` of the term minimizing ``(k, alpha)``."""
    if f.is_zero():
        raise ValueError("zero element")
    e = min(f.terms)
    return e.alpha, e.k


def is_multiple_of_y_power(f: GenPoly, k: int) -> bool:
    """``f / y^k`` has only allowed terms."""
    return all(term_allowed(XY(e.k - k, e.alpha)) for e in f.terms)


def corollary_level(f: GenPoly) -> int | None:
    """Least ``k`` with ``f`` a multiple of ``y^k`` containing the term ``y^(k+1)``."""
    for k in range(0, min(e.k for e in f.terms) + 1):
        if xy(0, k + 1) in f.terms and is_multiple_of_y_power(f, k):
            return k
    return None


def appb_witness(f: GenPoly) -> tuple[GenPoly, int]:
    """Multiplier that turns ``f`` into a Corollary-26 shape, with its case tag."""
    if f.is_zero() or ZERO in f.terms:
        raise ValueError("input must be a nonzero non-unit")
    alpha, k = appb_minimal_term(f)
    if alpha == 0:
        return GenPoly({ZERO: 1}, modulus=2), 1
    if alpha < 0:
        return mono(0, 1) + mono(-alpha, 0), 2
    negs = [-e.alpha for e in f.terms if e.k == k + 1 and e.alpha < 0]
    if not negs:
        if xy(0, k + 1) in f.terms:
            # y * y^(k+1) would cancel the new y^(k+2) over F2; f already has
            # the corollary shape at level k
            return GenPoly({ZERO: 1}, modulus=2), 3
        return mono(0, 1) + mono(-alpha, 2), 3
    beta = max(negs)
    return mono(0, 1) + mono(beta, 0), 4


class AppB(Domain):
    id = DomainId.APPB
    description = "F2[X, y, Z] localized at (X, y, Z)"

    def one(self) -> GenPoly:
        return GenPoly({ZERO: 1}, modulus=2)

    def contains(self, f: GenPoly) -> bool:
        return f.modulus == 2 and all(isinstance(e, XY) and term_allowed(e) for e in f.terms)

    def is_unit(self, f: GenPoly) -> bool:
        if f.is_zero():
            raise ValueError("zero element")
        return ZERO in f.terms

    def divides(self, d: GenPoly, g: GenPoly) -> bool:
        if self.is_unit(d):
            return True
        if self.is_unit(g):
            return False
        if d.is_monomial():
            e = d.min_exp()
            return all(term_allowed(t - e) for t in g.terms)
        raise NotImplementedError("divisibility by a non-monomial in the localized ring")

    def irreducible_example(self) -> GenPoly:
        return mono(0, 1)

    def is_irreducible(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        if Y in f.terms:
            return holds(irreducible_cert("y_term", f), "y is a term and the constant term is 0",
                         bounds, structural=True)
        low = [e.alpha for e in f.terms if e.k <= 1]
        delta = min(low) / 2 if low else Fraction(1)
        d = mono(delta, 0)
        return refuted(split_cert(f, d, f.unshift(xy(delta, 0))), "no y term: a power of x "
                       "splits off", bounds, structural=True)

    def appb_atomic_by_corollary(self, f: GenPoly,
                                 bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        k = corollary_level(f)
        if k is None:
            return unknown(bounds, "corollary hypothesis fails", element=f)
        g = f.unshift(xy(0, k))
        factors = [mono(0, 1)] * k + [g]
        return holds(factorization_cert(f, factors), f"y^{k} times an element with a y term",
                     bounds, structural=True)

    def _square_divisor(self, f: GenPoly) -> tuple[GenPoly, GenPoly, GenPoly]:
        """``(pi, h, u)`` with ``pi = y + x^c`` and ``pi * h = f * u``."""
        levels0 = [e.alpha / 2 for e in f.terms if e.k == 0]
        levels1 = [e.alpha for e in f.terms if e.k == 1]
        c = min(levels0 + levels1) if levels0 + levels1 else Fraction(1)
        pi = mono(0, 1) + mono(c, 0)
        unit = self.one() + mono(-2 * c, 2)
        h = f.unshift(xy(c, 0)) + f.shift(xy(-2 * c, 1))
        return pi, h, unit

    def furstenberg_divisor(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        if Y in f.terms:
            return holds(divisor_cert(f, f, self.one()), "f contains y", bounds, structural=True)
        pi, h, unit = self._square_divisor(f)
        return holds(divisor_cert(f, pi, h, unit), "(y + x^c)^2 = x^(2c) (1 + x^(-2c) y^2)",
                     bounds, structural=True)

    def _factor(self, f: GenPoly, bounds: SearchBounds, depth: int
                ) -> tuple[list[GenPoly], GenPoly] | None:
        """Irreducible factors and a unit ``u`` with ``prod == f * u``."""
        if Y in f.terms:
            return [f], self.one()
        v = self.appb_atomic_by_corollary(f, bounds)
        if v.holds:
            return v.certificate["factors"], self.one()
        if depth >= bounds.max_factors:
            return None
        pi, h, unit = self._square_divisor(f)
        if self.is_unit(h):
            return None
        rest = self._factor(h, bounds, depth + 1)
        if rest is None:
            return None
        facs, u2 = rest
        return [pi] + facs, unit * u2

    def is_atomic_elem(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        res = self._factor(f, bounds, 0)
        if res is None:
            return unknown(bounds, "no factorization found", element=f)
        facs, unit = res
        return holds(factorization_cert(f, facs, None if unit == self.one() else unit),
                     "square-divisor peeling and the y-power corollary", bounds, structural=True)

    def almost_atomic_witness_search(self, f: GenPoly,
                                     bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        m, case = appb_witness(f)
        prod = f * m
        v = self.appb_atomic_by_corollary(prod, bounds)
        if not v.holds:
            return unknown(bounds, f"case {case} product lacks the corollary shape", element=f)
        facs = [] if m == self.one() else [m]
        cert = multiplier_cert(f, m, facs, v)
        cert["case"] = case
        return holds(cert, f"four-case multiplier, case {case}", bounds, structural=True)

    def divisors_up_to(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        self.require_nonunit(f)
        out = []
        for e in self.monomial_grid(bounds):
            d = GenPoly({e: 1}, modulus=2)
            if self.is_unit(d):
                continue
            q = f.unshift(e)
            if self.contains(q) and not q.is_zero() and not self.is_unit(q):
                out.append(d)
        v = self.furstenberg_divisor(f, bounds)
        out.append(v.certificate["divisor"])
        return sorted(set(out), key=GenPoly.sort_key)

    def monomial_grid(self, bounds: SearchBounds, k_max: int = 3) -> list[XY]:
        return _monomial_grid(bounds.max_denominator, k_max)

    def split_search(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS
                     ) -> tuple[GenPoly, GenPoly] | None:
        """Bounded two-factor search: monomial times cofactor."""
        for e in self.monomial_grid(bounds):
            if e == ZERO:
                continue
            if e in f.terms or not all(term_allowed(t - e) for t in f.terms):
                continue
            return GenPoly({e: 1}, modulus=2), f.unshift(e)
        return None

    def verify_structural(self, cert: dict[str, Any]) -> bool:
        f = cert["element"]
        if not self.contains(f) or self.is_unit(f):
            return False
        if cert["rule"] == "y_term":
            return Y in f.terms
        return False

    def sample_universe(self, rng: random.Random, count: int,
                        bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        out = [mono(1, 0), mono(Fraction(1, 2), 0), mono(0, 3), mono(-1, 2),
               mono(1, 1) + mono(-1, 2), mono(0, 1) + mono(Fraction(1, 2), 0)]
        while len(out) < count:
            out.append(random_appb(rng, 4, bounds.max_denominator, 3))
        return out


@functools.lru_cache(maxsize=None)
def _monomial_grid(den: int, k_max: int) -> list[XY]:
    alphas = sorted({Fraction(n, d) for d in range(1, 2 * den + 1)
                     for n in range(-4 * d, 4 * d + 1)})
    return [XY(k, a) for k in range(k_max + 1) for a in alphas if term_allowed(XY(k, a))]


def random_appb(rng: random.Random, max_terms: int, max_den: int, max_k: int) -> GenPoly:
    """Random nonzero non-unit with at most ``max_terms`` terms."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            k = rng.randint(0, max_k)
            d = rng.randint(1, max_den)
            lo = 0 if k <= 1 else -3 * d
            a = Fraction(rng.randint(lo, 3 * d), d)
            e = XY(k, a)
            if e != ZERO:
                terms[e] = 1
        f = GenPoly(terms, modulus=2)
        if not f.is_zero():
            return f


def small_universe(max_terms: int, max_den: int, max_k: int, span: int = 1) -> list[GenPoly]:
    """Every non-unit with at most ``max_terms`` terms on a small exponent grid."""
    alphas = sorted({Fraction(n, d) for d in range(1, max_den + 1)
                     for n in range(-span * d, span * d + 1)})
    exps = [XY(k, a) for k in range(max_k + 1) for a in alphas
            if term_allowed(XY(k, a)) and XY(k, a) != ZERO]
    out = []
    for r in range(1, max_terms + 1):
        for combo in itertools.combinations(exps, r):
            out.append(GenPoly({e: 1 for e in combo}, modulus=2))
    return out
