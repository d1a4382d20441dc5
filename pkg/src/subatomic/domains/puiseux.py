"""Rings with rational exponents and integer-coefficient conditions.

* ``D24``: the union of Z[x^(1/n)] over n >= 1 (polynomials).
* ``D12``: the union of Z[[x^(1/n)]] + x^(1 + 1/n) Q[[x^(1/n)]], handled as
  power series truncated at order ``T``; every identity is exact below ``T``.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Any, Iterator

import sympy

from ..poly import GenPoly
from ..verdict import DEFAULT_BOUNDS, SearchBounds, Verdict, holds, refuted, unknown
from .base import (Domain, DomainId, divisor_cert, factorization_cert, furstenberg_variant_cert,
                   irreducible_cert, prime_factors, split_cert, structural_cert)

_S = sympy.Symbol("s")


def exp_lcm(*polys: GenPoly) -> int:
    n = 1
    for f in polys:
        for e in f.terms:
            n = math.lcm(n, Fraction(e).denominator)
    return n


def _frac_poly(terms: dict) -> GenPoly:
    return GenPoly({Fraction(e): c for e, c in terms.items()})


# ---------------------------------------------------------------------------
# D24
# ---------------------------------------------------------------------------

def to_zs(f: GenPoly, n: int) -> sympy.Poly:
    """View ``f`` as an integer polynomial in ``s = x^(1/n)``."""
    terms = {}
    for e, c in f.items():
        k = Fraction(e) * n
        if k.denominator != 1:
            raise ValueError(f"exponent {e} not on the 1/{n} grid")
        terms[(int(k),)] = int(c)
    return sympy.Poly.from_dict(terms, _S, domain="ZZ")


def from_zs(p: sympy.Poly, n: int) -> GenPoly:
    return GenPoly({Fraction(m[0], n): int(c) for m, c in p.terms()})


def _content(f: GenPoly) -> int:
    g = 0
    for _, c in f.items():
        g = math.gcd(g, int(c))
    return g


class D24(Domain):
    id = DomainId.D24
    description = "union of Z[x^(1/n)]"

    def one(self) -> GenPoly:
        return GenPoly({Fraction(0): 1})

    def const(self, c: int) -> GenPoly:
        return GenPoly({Fraction(0): c})

    def contains(self, f: GenPoly) -> bool:
        for e, c in f.items():
            if not isinstance(e, (int, Fraction)) or e < 0:
                return False
            if Fraction(c).denominator != 1:
                return False
        return True

    def is_unit(self, f: GenPoly) -> bool:
        if f.is_zero():
            raise ValueError("zero element")
        return f == self.one() or f == -self.one()

    def quotient(self, g: GenPoly, d: GenPoly) -> GenPoly | None:
        n = exp_lcm(g, d)
        q, r = sympy.div(to_zs(g, n).set_domain("QQ"), to_zs(d, n).set_domain("QQ"))
        if not r.is_zero:
            return None
        out = {}
        for m, c in q.terms():
            c = sympy.Rational(c)
            if c.q != 1:
                return None
            out[Fraction(m[0], n)] = int(c.p)
        return GenPoly(out)

    def divides(self, d: GenPoly, g: GenPoly) -> bool:
        return self.quotient(g, d) is not None

    def irreducible_example(self) -> GenPoly:
        return self.const(2)

    def semi_furstenberg_beta(self) -> GenPoly:
        return GenPoly({Fraction(1): 1})

    def _zero_const_split(self, f: GenPoly) -> tuple[GenPoly, GenPoly]:
        q = Fraction(f.min_exp())
        half = GenPoly({q / 2: 1})
        return half, f.unshift(q / 2)

    def _refined_split(self, f: GenPoly, bounds: SearchBounds) -> tuple[GenPoly, GenPoly] | None | int:
        """Nontrivial integer factorization of ``f`` in some Z[x^(1/N)].

        Returns the split, or the largest refinement examined when none exists."""
        base = exp_lcm(f)
        for j in range(1, bounds.refine_bound + 1):
            n = base * j
            _, facs = sympy.factor_list(to_zs(f, n).as_expr(), _S)
            nontrivial = [(g, m) for g, m in facs if sympy.Poly(g, _S).degree() > 0]
            if len(nontrivial) > 1 or (nontrivial and nontrivial[0][1] > 1):
                g = from_zs(sympy.Poly(nontrivial[0][0], _S, domain="ZZ"), n)
                rest = self.quotient(f, g)
                if rest is not None and not self.is_unit(rest):
                    return g, rest
        return base * bounds.refine_bound

    def is_irreducible(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        if f.coeff(Fraction(0)) == 0:
            return refuted(split_cert(f, *self._zero_const_split(f)),
                           "constant term zero: x^(q/2) splits off", bounds, structural=True)
        cont = _content(f)
        if cont > 1:
            p = prime_factors(cont)[0]
            if f.is_monomial() and abs(int(f.coeff(Fraction(0)))) == p:
                return holds(irreducible_cert("rational_prime", f), "rational prime", bounds,
                             structural=True)
            return refuted(split_cert(f, self.const(p), f * Fraction(1, p)),
                           "content has a prime factor", bounds, structural=True)
        s = self._refined_split(f, bounds)
        if isinstance(s, tuple):
            return refuted(split_cert(f, *s), "factors after refining the exponent grid", bounds,
                           structural=True)
        return holds(irreducible_cert("refined_irreducible", f, grid=s),
                     f"irreducible in Z[x^(1/N)] for every refinement up to N={s}", bounds)

    def _factor(self, f: GenPoly, bounds: SearchBounds, depth: int) -> list[GenPoly] | None:
        if depth > bounds.max_factors:
            return None
        v = self.is_irreducible(f, bounds)
        if v.holds:
            return [f]
        left, right = v.certificate["left"], v.certificate["right"]
        a = self._factor(left, bounds, depth + 1)
        b = self._factor(right, bounds, depth + 1) if a is not None else None
        if a is None or b is None:
            return None
        return a + b

    def is_atomic_elem(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        if f.coeff(Fraction(0)) == 0:
            return refuted(structural_cert("constant_zero", f,
                                           no_irreducible_divisor=self._monomial_like(f)),
                           "irreducibles have nonzero constant term, so products do too",
                           bounds, structural=True)
        facs = self._factor(f, bounds, 0)
        if facs is None:
            return unknown(bounds, "factor count bound reached", element=f)
        prod = self.one()
        for g in facs:
            prod = prod * g
        unit = None if prod == f else -self.one()
        return holds(factorization_cert(f, facs, unit), "content primes and grid refinement",
                     bounds)

    @staticmethod
    def _monomial_like(f: GenPoly) -> bool:
        return f.is_monomial() and abs(f.min_term()[1]) == 1

    def furstenberg_divisor(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        if self._monomial_like(f):
            return refuted(structural_cert("unit_monomial", f, no_irreducible_divisor=True),
                           "irreducibles have nonzero constant term and cannot divide +-x^q",
                           bounds, structural=True)
        q = Fraction(f.min_exp())
        g = f.unshift(q)
        v = self.is_atomic_elem(g, bounds)
        if not v.holds:
            return unknown(bounds, "cofactor not factored", element=f)
        pi = v.certificate["factors"][0]
        cof = self.quotient(f, pi)
        return holds(divisor_cert(f, pi, cof), "factor of the part with nonzero constant term",
                     bounds, v.structural)

    def check_quasi_furstenberg(self, f: GenPoly,
                                bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        if self._monomial_like(f):
            return refuted(structural_cert("unit_monomial", f),
                           "an irreducible dividing x^q * beta must divide beta", bounds,
                           structural=True)
        return super().check_quasi_furstenberg(f, bounds)

    def check_almost_furstenberg(self, f: GenPoly,
                                 bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        if self._monomial_like(f):
            return refuted(structural_cert("unit_monomial", f),
                           "an irreducible dividing x^q * gammas must divide the gammas",
                           bounds, structural=True)
        return super().check_almost_furstenberg(f, bounds)

    def check_semi_furstenberg(self, beta: GenPoly, samples: list[GenPoly],
                               bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        if beta.is_zero():
            raise ValueError("beta must be nonzero")
        x = GenPoly({Fraction(1): 1})
        bad = next((a for a in samples if self._monomial_like(a)), x)
        return refuted(structural_cert("unit_monomial", bad, beta=beta, sample=bad),
                       "for alpha = x^q an irreducible divisor of alpha*beta divides beta",
                       bounds, structural=True)

    def verify_structural(self, cert: dict[str, Any]) -> bool:
        f = cert["element"]
        if not self.contains(f) or self.is_unit(f):
            return False
        rule = cert["rule"]
        if rule == "constant_zero":
            return f.coeff(Fraction(0)) == 0
        if rule == "unit_monomial":
            return self._monomial_like(f)
        if rule == "rational_prime":
            return f.is_monomial() and f.min_exp() == 0 and sympy.isprime(abs(int(f.coeff(0))))
        if rule == "refined_irreducible":
            b = DEFAULT_BOUNDS.with_(refine_bound=max(1, cert["grid"] // exp_lcm(f)))
            return (f.coeff(Fraction(0)) != 0 and _content(f) == 1
                    and not isinstance(self._refined_split(f, b), tuple))
        return False

    def sample_universe(self, rng: random.Random, count: int,
                        bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        out = [GenPoly({Fraction(1): 1}), self.const(6), GenPoly({Fraction(1, 2): 1}),
               _frac_poly({0: 2, 1: 1}), _frac_poly({0: 1, 1: 1})]
        while len(out) < count:
            out.append(self.random_element(rng, min(bounds.max_coeff_height, 10), 2, 4))
        return out

    def random_element(self, rng: random.Random, height: int, degree: int, max_n: int) -> GenPoly:
        while True:
            n = rng.randint(1, max_n)
            f = GenPoly({Fraction(i, n): rng.randint(-height, height) for i in range(degree + 1)})
            if not f.is_zero() and not self.is_unit(f):
                return f

    def universe(self, degree: int, max_n: int, height: int) -> Iterator[GenPoly]:
        """Every ``sum_{i<=degree} c_i x^(i/n)`` with ``n <= max_n`` and ``|c_i| <= height``."""
        import itertools
        seen = set()
        for n in range(1, max_n + 1):
            for cs in itertools.product(range(-height, height + 1), repeat=degree + 1):
                f = GenPoly({Fraction(i, n): c for i, c in enumerate(cs)})
                if f.is_zero() or f in seen:
                    continue
                seen.add(f)
                yield f


# ---------------------------------------------------------------------------
# D12
# ---------------------------------------------------------------------------

def _integral(c: Any) -> bool:
    return Fraction(c).denominator == 1


class D12(Domain):
    """Truncated series; ``truncation`` is the first exponent that is dropped."""

    id = DomainId.D12
    description = "union of Z[[x^(1/n)]] + x^(1+1/n) Q[[x^(1/n)]], truncated"

    def __init__(self, truncation: Fraction | int = 4, search_height: int = 2,
                 grids: tuple[int, ...] = (1, 2, 3, 4, 6)):
        self.T = Fraction(truncation)
        if self.T <= 1:
            raise ValueError("truncation order must exceed 1")
        self.search_height = search_height
        self.grids = grids

    def one(self) -> GenPoly:
        return GenPoly({Fraction(0): 1})

    def const(self, c: int) -> GenPoly:
        return GenPoly({Fraction(0): c})

    def truncate(self, f: GenPoly) -> GenPoly:
        return GenPoly({Fraction(e): c for e, c in f.items() if e < self.T})

    def mul(self, f: GenPoly, g: GenPoly) -> GenPoly:
        out: dict[Fraction, Fraction] = {}
        for e1, c1 in f.terms.items():
            for e2, c2 in g.terms.items():
                e = e1 + e2
                if e < self.T:
                    out[e] = out.get(e, 0) + c1 * c2
        return GenPoly(out)

    def contains(self, f: GenPoly) -> bool:
        for e, c in f.items():
            if not isinstance(e, (int, Fraction)) or e < 0 or e >= self.T:
                return False
            if e <= 1 and not _integral(c):
                return False
        return True

    def is_unit(self, f: GenPoly) -> bool:
        if f.is_zero():
            raise ValueError("zero element")
        return abs(f.coeff(Fraction(0))) == 1

    def series_div(self, f: GenPoly, b: GenPoly, top: Fraction | None = None) -> GenPoly:
        """``f / b`` below order ``top`` (default ``T``) when ``b(0) != 0``."""
        b0 = Fraction(b.coeff(Fraction(0)))
        if b0 == 0:
            raise ZeroDivisionError("series with zero constant term")
        top = self.T if top is None else top
        g = exp_lcm(f, b)
        fs = {int(Fraction(e) * g): Fraction(c) for e, c in f.items()}
        bs = [(int(Fraction(e) * g), Fraction(c)) for e, c in b.items() if e > 0]
        a: dict[int, Fraction] = {}
        for k in range(int(math.ceil(top * g))):
            acc = fs.get(k, Fraction(0))
            for i, bi in bs:
                if i > k:
                    break
                acc -= bi * a.get(k - i, 0)
            if acc:
                a[k] = acc / b0
        return GenPoly({Fraction(k, g): c for k, c in a.items() if Fraction(k, g) < top})

    def quotient(self, g: GenPoly, d: GenPoly) -> GenPoly | None:
        """``g / d`` in the truncated ring, or None."""
        q0 = Fraction(d.min_exp())
        if g.is_zero():
            return GenPoly({})
        if Fraction(g.min_exp()) < q0:
            return None
        q = self.series_div(g.unshift(q0), d.unshift(q0), self.T - q0)
        if not self.contains(q):
            return None
        return q if self.mul(q, d) == self.truncate(g) else None

    def divides(self, d: GenPoly, g: GenPoly) -> bool:
        return self.quotient(g, d) is not None

    def irreducible_example(self) -> GenPoly:
        return self.const(2)

    def semi_furstenberg_beta(self) -> GenPoly:
        return GenPoly({Fraction(1): 1})

    # split search ---------------------------------------------------------
    def _search_factor(self, f: GenPoly, b0: int) -> GenPoly | None:
        """Find ``b`` with ``b(0) = b0`` and ``f / b`` in the ring.

        Depth-first over integer coefficients of ``b`` on a grid of exponents
        up to 1, pruning as soon as a low coefficient of ``f / b`` is not an
        integer.  Coefficients of ``b`` above 1 are zero.
        """
        vals = [0]
        for v in range(1, self.search_height + 1):
            vals += [v, -v]
        for n in self.grids:
            g = math.lcm(n, exp_lcm(f))
            if g > 24:
                continue
            fs = {int(Fraction(e) * g): Fraction(c) for e, c in f.items()}
            found = self._dfs(fs, g, b0, vals)
            if found is not None:
                b = GenPoly({Fraction(k, g): c for k, c in found.items()})
                if self.quotient(f, b) is not None:
                    return b
        return None

    def _dfs(self, fs: dict[int, Fraction], g: int, b0: int,
             vals: list[int]) -> dict[int, int] | None:
        top = g  # grid index of exponent 1
        b = {0: b0}
        a: dict[int, Fraction] = {}
        budget = [20000]

        def step(k: int) -> bool:
            if k > top:
                return True
            budget[0] -= 1
            if budget[0] < 0:
                return False
            choices = vals if k > 0 else [b0]
            for v in choices:
                if k > 0:
                    b[k] = v
                acc = fs.get(k, Fraction(0))
                for i, bi in b.items():
                    if 0 < i <= k and bi:
                        acc -= bi * a.get(k - i, 0)
                ak = acc / b0
                if ak.denominator == 1:
                    a[k] = ak
                    if step(k + 1):
                        return True
                    a.pop(k, None)
            if k > 0:
                b.pop(k, None)
            return False

        if not step(0):
            return None
        return {k: v for k, v in b.items() if v}

    def _zero_const_split(self, f: GenPoly) -> tuple[GenPoly, GenPoly]:
        q = Fraction(f.min_exp())
        above = [Fraction(e) - 1 for e in f.terms if e > 1]
        eps = min([q] + above) / 2
        return GenPoly({eps: 1}), f.unshift(eps)

    def is_irreducible(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        c0 = int(f.coeff(Fraction(0)))
        if c0 == 0:
            return refuted(split_cert(f, *self._zero_const_split(f)),
                           "constant term zero: a small power of x splits off", bounds,
                           structural=True)
        if sympy.isprime(abs(c0)):
            return holds(irreducible_cert("prime_constant", f), "constant term a rational prime",
                         bounds, structural=True)
        for p in sorted(set(prime_factors(c0))):
            for s in (1, -1):
                b = self._search_factor(f, s * p)
                if b is not None:
                    return refuted(split_cert(f, b, self.quotient(f, b)),
                                   "explicit split below the truncation order", bounds,
                                   structural=True)
        return unknown(bounds, "composite constant term but no split found", element=f)

    def is_atomic_elem(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        if f.coeff(Fraction(0)) == 0:
            return refuted(structural_cert("constant_zero", f,
                                           no_irreducible_divisor=self._no_divisor(f)),
                           "irreducibles have nonzero constant term, so products do too",
                           bounds, structural=True)
        facs = self._factor(f, bounds, 0)
        if facs is None:
            return unknown(bounds, "factorization search incomplete", element=f)
        prod = self.one()
        for g in facs:
            prod = self.mul(prod, g)
        unit = None
        if prod != self.truncate(f):
            unit = self.series_div(prod, f)
        return holds(factorization_cert(f, facs, unit), "prime constant terms", bounds)

    def units_equal(self, lhs: GenPoly, rhs: GenPoly, unit: GenPoly | None) -> bool:
        return super().units_equal(self.truncate(lhs), self.truncate(rhs), unit)

    def _factor(self, f: GenPoly, bounds: SearchBounds, depth: int) -> list[GenPoly] | None:
        if depth > bounds.max_factors:
            return None
        v = self.is_irreducible(f, bounds)
        if v.holds:
            return [f]
        if v.unknown:
            return None
        a = self._factor(v.certificate["left"], bounds, depth + 1)
        b = self._factor(v.certificate["right"], bounds, depth + 1) if a is not None else None
        return None if a is None or b is None else a + b

    @staticmethod
    def _no_divisor(f: GenPoly) -> bool:
        """Minimal term +-x^q with 0 < q <= 1: no irreducible divides ``f``."""
        q, c = f.min_term()
        return 0 < q <= 1 and abs(c) == 1

    def _low_content(self, f: GenPoly) -> int:
        g = 0
        for e, c in f.items():
            if e <= 1:
                g = math.gcd(g, int(c))
        return g

    def furstenberg_divisor(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        c0 = int(f.coeff(Fraction(0)))
        if c0 != 0 and sympy.isprime(abs(c0)):
            return holds(divisor_cert(f, f, self.one()), "f itself has prime constant term",
                         bounds, structural=True)
        cont = self._low_content(f)
        if cont != 1:
            p = 2 if cont == 0 else prime_factors(cont)[0]
            return holds(divisor_cert(f, self.const(p), f * Fraction(1, p)),
                         "prime dividing every coefficient up to degree one", bounds,
                         structural=True)
        if self._no_divisor(f):
            return refuted(structural_cert("unit_min_coeff", f, no_irreducible_divisor=True),
                           "minimal term +-x^q with q <= 1 has no irreducible divisor", bounds,
                           structural=True)
        _, cmin = f.min_term()
        for p in sorted(set(prime_factors(int(cmin)))):
            for s in (1, -1):
                b = self._search_factor(f, s * p)
                if b is not None:
                    return holds(divisor_cert(f, b, self.quotient(f, b)),
                                 "prime-constant divisor found by coefficient search", bounds)
        return unknown(bounds, "no prime-constant divisor found", element=f)

    def _prime_of(self, f: GenPoly) -> int:
        c0 = int(f.coeff(Fraction(0)))
        return 2 if c0 == 0 else prime_factors(c0)[0]

    def check_semi_furstenberg(self, beta: GenPoly, samples: list[GenPoly],
                               bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        if beta != GenPoly({Fraction(1): 1}):
            return super().check_semi_furstenberg(beta, samples, bounds)
        results = []
        for alpha in samples:
            self.require_nonunit(alpha)
            prod = self.mul(alpha, beta)
            p = self._prime_of(alpha)
            pi = self.const(p)
            cof = self.quotient(prod, pi)
            if cof is None or self.divides(pi, beta):
                return refuted({"kind": "sample_failure", "sample": alpha,
                                "reason": f"{p} does not divide x*alpha"},
                               "witness failed", bounds)
            dv = holds(divisor_cert(prod, pi, cof), "prime of c(alpha)", bounds, structural=True)
            results.append(holds(furstenberg_variant_cert(alpha, [beta], dv),
                                 "prime divides x*alpha but not x", bounds, structural=True))
        return holds({"kind": "samples", "beta": beta, "results": results},
                     "x*alpha has a rational prime divisor", bounds, structural=True)

    def check_almost_furstenberg(self, f: GenPoly,
                                 bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        p = self._prime_of(f)
        gamma = GenPoly({Fraction(0): p, Fraction(1): 1})
        prod = self.mul(f, gamma)
        pi = self.const(p)
        cof = self.quotient(prod, pi)
        if cof is None:
            return unknown(bounds, "p does not divide (p + x) f", element=f)
        dv = holds(divisor_cert(prod, pi, cof), "p divides (p + x) f", bounds, structural=True)
        return holds(furstenberg_variant_cert(f, [gamma], dv), "gamma = p + x, pi = p", bounds,
                     structural=True)

    def check_quasi_furstenberg(self, f: GenPoly,
                                bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        return self.check_almost_furstenberg(f, bounds)

    def verify_structural(self, cert: dict[str, Any]) -> bool:
        f = cert["element"]
        if not self.contains(f) or self.is_unit(f):
            return False
        rule = cert["rule"]
        if rule == "constant_zero":
            return f.coeff(Fraction(0)) == 0
        if rule == "unit_min_coeff":
            return self._no_divisor(f)
        if rule == "prime_constant":
            return sympy.isprime(abs(int(f.coeff(Fraction(0)))))
        return False

    def sample_universe(self, rng: random.Random, count: int,
                        bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        out = [GenPoly({Fraction(1): 1}), _frac_poly({0: 6, 1: 1}), _frac_poly({0: 4, 1: 1}),
               GenPoly({Fraction(1, 2): 1}), _frac_poly({0: 2, Fraction(3, 2): Fraction(1, 3)})]
        while len(out) < count:
            out.append(self.random_element(rng, min(bounds.max_coeff_height, 10),
                                           bounds.max_denominator))
        return out

    def random_element(self, rng: random.Random, height: int, max_n: int) -> GenPoly:
        while True:
            n = rng.randint(1, max_n)
            terms: dict[Fraction, Fraction] = {}
            c0 = rng.choice([0, rng.randint(-height, height)])
            if c0:
                terms[Fraction(0)] = Fraction(c0)
            for k in range(1, int(self.T * n)):
                e = Fraction(k, n)
                if rng.random() < 0.3:
                    if e <= 1:
                        terms[e] = Fraction(rng.randint(-height, height))
                    else:
                        terms[e] = Fraction(rng.randint(-height, height), rng.randint(1, height))
            f = GenPoly(terms)
            if not f.is_zero() and not self.is_unit(f):
                return f
