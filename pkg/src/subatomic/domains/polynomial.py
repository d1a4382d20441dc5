"""Polynomial domains with integrality imposed on the low-degree coefficients.

* ``D8``  : Z + Zx + x^2 Q[x]
* ``D9``  : Z + Zx + x^2 Q(sqrt2)[x]
* ``D23`` : Z + x Q[x]

Elements are ``GenPoly`` with non-negative ``int`` exponents.  Every nonzero
``f`` is ``c * x^k * prod u_i^e_i`` over the coefficient field with each
``u_i`` irreducible and ``u_i(0) = 1``; splits inside the subring are
enumerated from that shape.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from fractions import Fraction
from typing import Any, Iterator

import sympy

from ..exact import QLin, is_integral, is_rational
from ..poly import GenPoly
from ..verdict import DEFAULT_BOUNDS, SearchBounds, Verdict, holds, refuted, unknown
from .base import (Domain, DomainId, divisor_cert, factorization_cert, irreducible_cert,
                   multiplier_cert, prime_factors, split_cert, structural_cert)

_X = sympy.Symbol("x")
_SQRT2 = sympy.sqrt(2)


def _to_sympy_coeff(c: Any) -> sympy.Expr:
    if isinstance(c, QLin):
        return sympy.Rational(c.rat.numerator, c.rat.denominator) + \
            sympy.Rational(c.irr.numerator, c.irr.denominator) * _SQRT2
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def _from_sympy_coeff(c: sympy.Expr, field_sqrt2: bool) -> Fraction | QLin:
    c = sympy.expand(sympy.radsimp(c))
    if not field_sqrt2:
        r = sympy.Rational(c)
        return Fraction(int(r.p), int(r.q))
    b = sympy.Rational(c.coeff(_SQRT2))
    a = sympy.Rational(sympy.expand(c - b * _SQRT2))
    return QLin(Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q)))


def to_sympy(f: GenPoly) -> sympy.Expr:
    return sympy.Add(*[_to_sympy_coeff(c) * _X ** int(e) for e, c in f.items()])


def from_sympy(expr: sympy.Expr, field_sqrt2: bool) -> GenPoly:
    p = sympy.Poly(expr, _X, extension=True) if field_sqrt2 else sympy.Poly(expr, _X)
    return GenPoly({int(m[0]): _from_sympy_coeff(c, field_sqrt2) for m, c in p.terms()})


def poly_divmod(f: GenPoly, g: GenPoly) -> tuple[GenPoly, GenPoly]:
    """Long division over the coefficient field (integer exponents)."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    dg, lc = g.max_exp(), g.coeff(g.max_exp())
    q: dict[int, Any] = {}
    r = f
    while not r.is_zero() and r.max_exp() >= dg:
        e = r.max_exp()
        t = r.coeff(e) / lc
        q[e - dg] = t
        r = r - g.shift(e - dg) * t
    return GenPoly(q), r


def _exact_quotient(f: GenPoly, g: GenPoly) -> GenPoly | None:
    q, r = poly_divmod(f, g)
    return q if r.is_zero() else None


@functools.lru_cache(maxsize=65536)
def field_factor(f: GenPoly, field_sqrt2: bool) -> tuple[Any, int, tuple[tuple[GenPoly, int], ...]]:
    """``f = c * x^k * prod u^e`` with ``u(0) = 1`` and ``u`` field-irreducible."""
    k, _ = f.min_term()
    core = f.unshift(k)
    c = core.coeff(0)
    monic0 = core * (Fraction(1) / c if not isinstance(c, QLin) else c.inverse())
    if monic0.max_exp() == 0:
        return c, k, ()
    expr = to_sympy(monic0)
    if field_sqrt2:
        _, facs = sympy.factor_list(expr, _X, extension=_SQRT2)
    else:
        _, facs = sympy.factor_list(expr, _X)
    out = []
    for fac, mult in facs:
        u = from_sympy(fac, field_sqrt2)
        u0 = u.coeff(0)
        u = u * (Fraction(1) / u0 if not isinstance(u0, QLin) else u0.inverse())
        out.append((u, int(mult)))
    out.sort(key=lambda t: (t[0].max_exp(), t[0].sort_key()))
    return c, k, tuple(out)


def _powers(units: tuple[tuple[GenPoly, int], ...], vec: tuple[int, ...]) -> GenPoly:
    out = GenPoly({0: 1})
    for (u, _), a in zip(units, vec):
        for _ in range(a):
            out = out * u
    return out


def _div(a: Any, b: Any) -> Any:
    """Exact quotient; plain ints are promoted so ``/`` never yields a float."""
    if isinstance(a, QLin) or isinstance(b, QLin):
        return QLin.coerce(a) / QLin.coerce(b)
    return Fraction(a) / Fraction(b)


def _as_int(c: Any) -> int:
    if isinstance(c, QLin):
        if not c.is_integer():
            raise ValueError(f"{c} is not an integer")
        c = c.rat
    return int(Fraction(c))


def _int_divisors(n: Any) -> list[int]:
    n = abs(_as_int(n))
    if n == 0:
        return []
    ds = sorted(int(d) for d in sympy.divisors(n))
    return [s * d for d in ds for s in (1, -1)]


class PolyDomain(Domain):
    """Shared logic for the three integer-exponent polynomial domains."""

    #: degrees strictly below this need integer coefficients
    low: int = 2
    sqrt2: bool = False

    def one(self) -> GenPoly:
        return GenPoly({0: 1})

    def const(self, c: Any) -> GenPoly:
        return GenPoly({0: c})

    def normalize(self, f: GenPoly) -> GenPoly:
        if self.sqrt2:
            return f.map_coeffs(QLin.coerce)
        return f

    def _coeff_ok(self, c: Any) -> bool:
        return self.sqrt2 or is_rational(c)

    def contains(self, f: GenPoly) -> bool:
        for e, c in f.items():
            if not isinstance(e, int) and not (isinstance(e, Fraction) and e.denominator == 1):
                return False
            if e < 0 or not self._coeff_ok(c):
                return False
            if e < self.low and not is_integral(c):
                return False
        return True

    def is_unit(self, f: GenPoly) -> bool:
        if f.is_zero():
            raise ValueError("zero element")
        return f == self.one() or f == -self.one()

    def divides(self, d: GenPoly, g: GenPoly) -> bool:
        q = _exact_quotient(g, d)
        return q is not None and self.contains(q)

    def quotient(self, g: GenPoly, d: GenPoly) -> GenPoly | None:
        q = _exact_quotient(g, d)
        return q if q is not None and self.contains(q) else None

    def factor_shape(self, f: GenPoly):
        return field_factor(f, self.sqrt2)

    def irreducible_example(self) -> GenPoly:
        return self.const(2)

    # split enumeration ------------------------------------------------------
    def _lambda_candidates(self, c: Any, exhaustive: bool, bounds: SearchBounds) -> list[Any]:
        if exhaustive:
            return _int_divisors(c)
        h = bounds.max_coeff_height
        cands: list[Any] = []
        for n in range(1, h + 1):
            for s in (1, -1):
                cands.append(Fraction(s * n))
                cands.append(_div(c, s * n))
        if is_integral(c) and c != 0:
            cands += _int_divisors(c)
        seen, out = set(), []
        for lam in cands:
            if lam != 0 and lam not in seen:
                seen.add(lam)
                out.append(lam)
        return out

    def splits(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS,
               exhaustive: bool = False) -> Iterator[tuple[GenPoly, GenPoly]]:
        """Two-factor splits ``f = b * a`` with both factors non-units.

        When ``exhaustive`` is set the scalar parts range over integer
        divisors of the minimal coefficient only, which is complete as long
        as both factors must carry an integral minimal coefficient.
        """
        c, k, units = self.factor_shape(f)
        vecs = list(itertools.product(*[range(m + 1) for _, m in units]))
        full = tuple(m for _, m in units)
        lams = self._lambda_candidates(c, exhaustive, bounds)
        for j in range(k + 1):
            for vec in vecs:
                pa = _powers(units, vec)
                pb = _powers(units, tuple(m - a for m, a in zip(full, vec)))
                for lam in lams:
                    b = self.normalize(pa.shift(j) * lam)
                    a = self.normalize(pb.shift(k - j) * _div(c, lam))
                    if not (self.contains(b) and self.contains(a)):
                        continue
                    if self.is_unit(b) or self.is_unit(a):
                        continue
                    yield b, a

    def first_split(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS,
                    exhaustive: bool = False) -> tuple[GenPoly, GenPoly] | None:
        return next(self.splits(f, bounds, exhaustive), None)

    def divisors_up_to(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        if f.is_zero():
            raise ValueError("zero element")
        found: dict[GenPoly, None] = {}
        for b, _ in self.splits(f, bounds):
            if self._height(b) > bounds.max_coeff_height:
                continue
            found.setdefault(self.canonical(b), None)
        return sorted(found, key=lambda g: (g.max_exp(), self._height(g), g.sort_key()))

    @staticmethod
    def _height(g: GenPoly) -> int:
        h = 0
        for _, c in g.items():
            parts = [c.rat, c.irr] if isinstance(c, QLin) else [Fraction(c)]
            for p in parts:
                h = max(h, abs(p.numerator), p.denominator)
        return h

    def canonical(self, g: GenPoly) -> GenPoly:
        """Associate with positive minimal coefficient."""
        _, c = g.min_term()
        return -g if c < 0 else g

    # irreducibility / factorization ------------------------------------------
    def _low_split_irreducible(self, f: GenPoly, bounds: SearchBounds) -> Verdict:
        s = self.first_split(f, bounds, exhaustive=True)
        if s is None:
            return holds(irreducible_cert("exhaustive_split", f), "no split over the field factorization",
                         bounds, structural=True)
        return refuted(split_cert(f, *s), "explicit split", bounds, structural=True)

    def _factor_low(self, f: GenPoly, bounds: SearchBounds) -> list[GenPoly]:
        """Complete factorization of an element whose minimal degree is below ``low``."""
        s = self.first_split(f, bounds, exhaustive=True)
        if s is None:
            return [f]
        b, a = s
        return self._factor_low(b, bounds) + self._factor_low(a, bounds)

    def _sign_fix(self, f: GenPoly, factors: list[GenPoly]) -> tuple[list[GenPoly], GenPoly | None]:
        prod = self.one()
        for g in factors:
            prod = prod * g
        prod = self.normalize(prod)
        if prod == f:
            return factors, None
        if prod == -f:
            return factors, -self.one()
        raise AssertionError("factorization does not multiply back")


def _min_coeff_nonintegral(f: GenPoly) -> bool:
    _, c = f.min_term()
    return not is_integral(c)


class LowIntegralDomain(PolyDomain):
    """Z + Zx + x^2 K[x] for K = Q or Q(sqrt2)."""

    low = 2

    def sample_universe(self, rng: random.Random, count: int,
                        bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        fixed = [GenPoly({1: 1}), GenPoly({2: 1}), GenPoly({2: Fraction(1, 2)}),
                 GenPoly({0: 2}), GenPoly({0: 6, 1: 3, 2: Fraction(1, 2)}),
                 GenPoly({1: 2, 3: Fraction(2, 3)})]
        if self.sqrt2:
            fixed.append(GenPoly({2: QLin(0, 1)}))
        out = [self.normalize(g) for g in fixed]
        while len(out) < count:
            out.append(self.random_element(rng, bounds.max_coeff_height, 4))
        return out

    def random_element(self, rng: random.Random, height: int, degree: int,
                       force_min: Any = None, min_deg: int | None = None) -> GenPoly:
        while True:
            k = rng.randint(0, degree) if min_deg is None else min_deg
            terms: dict[int, Any] = {}
            for e in range(k, degree + 1):
                if e > k and rng.random() < 0.4:
                    continue
                if e < self.low:
                    c: Any = Fraction(rng.randint(-height, height))
                else:
                    c = Fraction(rng.randint(-height, height), rng.randint(1, height))
                    if self.sqrt2 and rng.random() < 0.5:
                        c = QLin(c, Fraction(rng.randint(-height, height), rng.randint(1, height)))
                terms[e] = c
            if force_min is not None:
                terms[k] = force_min
            f = self.normalize(GenPoly(terms))
            if not f.is_zero() and self.contains(f) and not self.is_unit(f):
                return f

    def is_irreducible(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        k, _ = f.min_term()
        if k >= self.low:
            two = self.const(2)
            return refuted(split_cert(f, two, self.normalize(f * Fraction(1, 2))),
                           "minimal degree at least two: divisible by 2", bounds, structural=True)
        return self._low_split_irreducible(f, bounds)

    def is_atomic_elem(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        k, c = f.min_term()
        if k >= self.low and not is_integral(c):
            return refuted(structural_cert("min_coeff_nonintegral", f, degree=k),
                           "non-integral minimal coefficient above degree one is divisible by "
                           "every rational prime", bounds, structural=True)
        if k >= self.low:
            g = f.unshift(k - 1)
            factors = [GenPoly({1: 1})] * (k - 1) + self._factor_low(g, bounds)
        else:
            factors = self._factor_low(f, bounds)
        factors = [self.normalize(p) for p in factors]
        factors, unit = self._sign_fix(f, factors)
        return holds(factorization_cert(f, factors, unit), "x-power times exhaustive splitting",
                     bounds, structural=True)

    def almost_multiplier(self, f: GenPoly) -> tuple[GenPoly, list[GenPoly]] | None:
        """Denominator of the minimal coefficient, split into primes."""
        _, c = f.min_term()
        if isinstance(c, QLin):
            if not c.is_rational():
                return None
            c = c.rat
        n = Fraction(c).denominator
        primes = [self.normalize(self.const(p)) for p in prime_factors(n)]
        return self.normalize(self.const(n)), primes

    def almost_atomic_witness_search(self, f: GenPoly,
                                     bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        k, c = f.min_term()
        if not (k >= self.low and not is_integral(c)):
            v = self.is_atomic_elem(f, bounds)
            return holds(multiplier_cert(f, self.one(), [], v), "already atomic", bounds,
                         v.structural)
        m = self.almost_multiplier(f)
        if m is None:
            return refuted(structural_cert("irrational_min_coeff", f, degree=k),
                           "products of irreducibles keep an irrational minimal coefficient",
                           bounds, structural=True)
        mult, primes = m
        prod = self.normalize(f * mult)
        v = self.is_atomic_elem(prod, bounds)
        if not v.holds:
            return unknown(bounds, "product not atomic", element=f)
        return holds(multiplier_cert(f, mult, primes, v), "clear the minimal denominator",
                     bounds, structural=True)

    def quasi_atomic_witness_search(self, f: GenPoly,
                                    bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        k, c = f.min_term()
        if not (k >= self.low and not is_integral(c)):
            v = self.is_atomic_elem(f, bounds)
            return holds(multiplier_cert(f, self.one(), None, v), "already atomic", bounds,
                         v.structural)
        inv = c.inverse() if isinstance(c, QLin) else Fraction(1) / c
        beta = self.normalize(GenPoly({2: inv}))
        prod = self.normalize(f * beta)
        v = self.is_atomic_elem(prod, bounds)
        if not v.holds:
            return unknown(bounds, "product not atomic", element=f)
        return holds(multiplier_cert(f, beta, None, v), "x^2 over the minimal coefficient",
                     bounds, structural=True)

    def furstenberg_divisor(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        k, _ = f.min_term()
        if k >= self.low:
            two = self.const(2)
            return holds(divisor_cert(f, two, self.normalize(f * Fraction(1, 2))),
                         "2 divides every element of minimal degree at least two", bounds,
                         structural=True)
        return super().furstenberg_divisor(f, bounds)

    def verify_structural(self, cert: dict[str, Any]) -> bool:
        f = cert["element"]
        if not self.contains(f) or self.is_unit(f):
            return False
        k, c = f.min_term()
        rule = cert["rule"]
        if rule == "min_coeff_nonintegral":
            return k >= self.low and not is_integral(c)
        if rule == "irrational_min_coeff":
            return k >= self.low and isinstance(c, QLin) and not c.is_rational()
        if rule == "exhaustive_split":
            return k < self.low and self.first_split(f, DEFAULT_BOUNDS, exhaustive=True) is None
        return False

    def almost_search_exhausts(self, f: GenPoly, height: int = 20, max_irreducibles: int = 4,
                               bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        """Products of at most ``max_irreducibles`` small irreducibles, each of
        which leaves ``f * m`` non-atomic; returns the multipliers examined."""
        pool = [self.normalize(self.const(int(p))) for p in sympy.primerange(2, height + 1)]
        pool += [self.normalize(GenPoly(t)) for t in ({1: 1}, {0: 1, 1: 1}, {0: 1, 1: -1},
                                                       {0: 2, 1: 1}, {0: 1, 2: 1})]
        pool = [p for p in pool if self.is_irreducible(p, bounds).holds]
        tried = []
        for r in range(0, max_irreducibles + 1):
            for combo in itertools.combinations_with_replacement(pool, r):
                m = self.one()
                for p in combo:
                    m = m * p
                m = self.normalize(m)
                v = self.is_atomic_elem(self.normalize(f * m), bounds)
                if v.holds:
                    raise AssertionError(f"multiplier {m} makes {f} atomic")
                tried.append(m)
        return tried


class D8(LowIntegralDomain):
    id = DomainId.D8
    description = "Z + Zx + x^2 Q[x]"
    sqrt2 = False


class D9(LowIntegralDomain):
    id = DomainId.D9
    description = "Z + Zx + x^2 Q(sqrt2)[x]"
    sqrt2 = True

    def almost_atomic_witness_search(self, f: GenPoly,
                                     bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        return super().almost_atomic_witness_search(self.normalize(f), bounds)


class D23(PolyDomain):
    id = DomainId.D23
    description = "Z + x Q[x]"
    low = 1

    def is_irreducible(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        c0 = f.coeff(0)
        if c0 == 0:
            two = self.const(2)
            return refuted(split_cert(f, two, f * Fraction(1, 2)), "constant term zero",
                           bounds, structural=True)
        if abs(c0) != 1:
            p = prime_factors(int(c0))[0]
            if f.is_monomial() and abs(c0) == p:
                return holds(irreducible_cert("rational_prime", f), "rational prime", bounds,
                             structural=True)
            return refuted(split_cert(f, self.const(p), f * Fraction(1, p)),
                           "prime factor of the constant term", bounds, structural=True)
        _, _, units = self.factor_shape(f)
        if len(units) == 1 and units[0][1] == 1:
            return holds(irreducible_cert("unit_constant_field_irreducible", f),
                         "constant term +-1 and irreducible over Q", bounds, structural=True)
        u = units[0][0]
        return refuted(split_cert(f, u, self.quotient(f, u)), "field factor with constant 1",
                       bounds, structural=True)

    def is_atomic_elem(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        c0 = f.coeff(0)
        if c0 == 0:
            return refuted(structural_cert("constant_zero", f, no_irreducible_divisor=False),
                           "constant term zero: every factor of a product of irreducibles has "
                           "nonzero constant term", bounds, structural=True)
        c, _, units = self.factor_shape(f)
        factors = [self.const(p) for p in prime_factors(int(c))]
        for u, m in units:
            factors += [u] * m
        factors, unit = self._sign_fix(f, factors)
        return holds(factorization_cert(f, factors, unit), "primes of the constant term times "
                     "field factors", bounds, structural=True)

    def quasi_atomic_witness_search(self, f: GenPoly,
                                    bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        if f.coeff(0) == 0:
            return refuted(structural_cert("constant_zero", f),
                           "every multiple keeps constant term zero", bounds, structural=True)
        return super().quasi_atomic_witness_search(f, bounds)

    def furstenberg_divisor(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        c0 = f.coeff(0)
        if c0 == 0 or abs(c0) != 1:
            p = 2 if c0 == 0 else prime_factors(int(c0))[0]
            return holds(divisor_cert(f, self.const(p), f * Fraction(1, p)),
                         "smallest prime of the constant term", bounds, structural=True)
        return super().furstenberg_divisor(f, bounds)

    def sample_universe(self, rng: random.Random, count: int,
                        bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        out = [GenPoly({1: 1}), GenPoly({0: 6, 1: 1}), GenPoly({0: 1, 2: 1}),
               GenPoly({0: 1, 1: Fraction(1, 2), 2: 3}), GenPoly({0: 5})]
        while len(out) < count:
            out.append(self.random_element(rng, min(bounds.max_coeff_height, 10), 4,
                                           bounds.max_denominator))
        return out

    def random_element(self, rng: random.Random, height: int, degree: int,
                       max_den: int) -> GenPoly:
        while True:
            terms: dict[int, Any] = {0: Fraction(rng.choice([0, rng.randint(-height, height)]))}
            for e in range(1, rng.randint(0, degree) + 1):
                if rng.random() < 0.6:
                    terms[e] = Fraction(rng.randint(-height, height), rng.randint(1, max_den))
            f = GenPoly(terms)
            if not f.is_zero() and not self.is_unit(f):
                return f

    def verify_structural(self, cert: dict[str, Any]) -> bool:
        f = cert["element"]
        if not self.contains(f) or self.is_unit(f):
            return False
        rule = cert["rule"]
        if rule == "constant_zero":
            return f.coeff(0) == 0
        if rule == "rational_prime":
            return f.is_monomial() and f.coeff(0) != 0 and sympy.isprime(abs(int(f.coeff(0))))
        if rule == "unit_constant_field_irreducible":
            _, _, units = self.factor_shape(f)
            return abs(f.coeff(0)) == 1 and len(units) == 1 and units[0][1] == 1
        return False

    def prime_ideal_instance_check(self, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        """Irreducibles in the bounded families never have constant term 0."""
        h = min(bounds.max_coeff_height, 10)
        checked = []
        for p in sympy.primerange(2, h + 1):
            for s in (1, -1):
                checked.append(self.const(s * int(p)))
        grid = sorted({Fraction(a, b) for a in range(-h, h + 1) for b in range(1, 3)})
        for c1 in grid:
            for c2 in [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2)]:
                f = GenPoly({0: 1, 1: c1, 2: c2})
                if not self.is_unit(f):
                    checked.append(f)
        irreducible = [f for f in checked if self.is_irreducible(f, bounds).holds]
        bad = [f for f in irreducible if f.coeff(0) == 0]
        if bad:
            return refuted({"kind": "ideal_member", "element": bad[0]},
                           "irreducible inside the constant-zero ideal", bounds)
        return holds({"kind": "ideal_avoidance", "ideal": "constant term 0",
                      "irreducibles_checked": len(irreducible)},
                     "no enumerated irreducible lies in the ideal", bounds)

    def _check(self, cert: Any) -> bool:
        if isinstance(cert, dict) and cert.get("kind") == "ideal_avoidance":
            return self.prime_ideal_instance_check(cert.get("bounds", DEFAULT_BOUNDS)).holds
        return super()._check(cert)
