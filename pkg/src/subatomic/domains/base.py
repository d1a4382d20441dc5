"""Common adapter contract shared by every constructed domain."""

from __future__ import annotations

import enum
import random
from fractions import Fraction
from typing import Any, Iterable

import sympy

from ..poly import GenPoly
from ..verdict import DEFAULT_BOUNDS, Outcome, SearchBounds, Verdict, holds, refuted, unknown


class DomainId(str, enum.Enum):
    D8 = "d8"
    D9 = "d9"
    D23 = "d23"
    D24 = "d24"
    D12 = "d12"
    MA_QPLUS = "ma_qplus"
    MA_S4 = "ma_s4"
    MA_APPA = "ma_appa"
    APPB = "appb"


def prime_factors(n: int) -> list[int]:
    """Prime factors of ``|n|`` with multiplicity, ascending."""
    out: list[int] = []
    for p, k in sorted(sympy.factorint(abs(n)).items()):
        out += [int(p)] * k
    return out


def omega(n: int) -> int:
    return len(prime_factors(n)) if abs(n) > 1 else 0


def product(polys: Iterable[GenPoly], one: GenPoly) -> GenPoly:
    out = one
    for p in polys:
        out = out * p
    return out


class Domain:
    """Adapter contract.  Subclasses supply the ring and its closed forms."""

    id: DomainId
    #: paper-independent description used in reports
    description: str = ""

    # ring structure -----------------------------------------------------
    def one(self) -> GenPoly:
        raise NotImplementedError

    def contains(self, f: GenPoly) -> bool:
        raise NotImplementedError

    def is_unit(self, f: GenPoly) -> bool:
        raise NotImplementedError

    def mul(self, f: GenPoly, g: GenPoly) -> GenPoly:
        return f * g

    def units_equal(self, lhs: GenPoly, rhs: GenPoly, unit: GenPoly | None) -> bool:
        """``lhs == rhs * unit`` with ``unit`` (default 1) a unit."""
        if unit is None:
            return lhs == rhs
        return self.contains(unit) and self.is_unit(unit) and lhs == self.mul(rhs, unit)

    def divides(self, d: GenPoly, g: GenPoly) -> bool:
        """Exact divisibility test ``d | g`` in the domain."""
        raise NotImplementedError

    def require_nonunit(self, f: GenPoly) -> None:
        if f.is_zero():
            raise ValueError("zero element")
        if not self.contains(f):
            raise ValueError(f"{f} is not an element of {self.id.value}")
        if self.is_unit(f):
            raise ValueError(f"{f} is a unit of {self.id.value}")

    # element-level questions ---------------------------------------------
    def is_irreducible(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        raise NotImplementedError

    def is_atomic_elem(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        raise NotImplementedError

    def divisors_up_to(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        raise NotImplementedError

    def furstenberg_divisor(self, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        """Default: first factor of an irreducible factorization."""
        self.require_nonunit(f)
        fac = self.is_atomic_elem(f, bounds)
        if fac.holds:
            pi = fac.certificate["factors"][0]
            rest = fac.certificate["factors"][1:]
            cof = product(rest, self.one())
            return holds(divisor_cert(f, pi, cof, fac.certificate.get("unit")),
                         "first irreducible factor", bounds, fac.structural)
        if fac.refuted and fac.certificate.get("no_irreducible_divisor"):
            return refuted(fac.certificate, fac.rule, bounds, fac.structural)
        return unknown(bounds, "no irreducible divisor found", element=f)

    def almost_atomic_witness_search(self, f: GenPoly,
                                     bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        self.require_nonunit(f)
        fac = self.is_atomic_elem(f, bounds)
        if fac.holds:
            return holds(multiplier_cert(f, self.one(), [], fac), "already atomic", bounds,
                         fac.structural)
        return unknown(bounds, "no multiplier found", element=f)

    def quasi_atomic_witness_search(self, f: GenPoly,
                                    bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        v = self.almost_atomic_witness_search(f, bounds)
        if v.holds:
            return v
        return unknown(bounds, "no multiplier found", element=f)

    def check_almost_furstenberg(self, f: GenPoly,
                                 bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        """Default: an irreducible divisor of ``f`` itself (empty gamma list)."""
        v = self.furstenberg_divisor(f, bounds)
        if v.holds:
            return holds(furstenberg_variant_cert(f, [], v), "irreducible divisor of f",
                         bounds, v.structural)
        return unknown(bounds, "no witness found", element=f)

    def check_quasi_furstenberg(self, f: GenPoly,
                                bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        v = self.check_almost_furstenberg(f, bounds)
        if v.holds:
            return v
        return unknown(bounds, "no witness found", element=f)

    def semi_furstenberg_beta(self) -> GenPoly:
        return self.one()

    def _divisor_candidates(self, g: GenPoly, bounds: SearchBounds) -> Iterable[Verdict]:
        v = self.furstenberg_divisor(g, bounds)
        if v.holds:
            yield v
        fac = self.is_atomic_elem(g, bounds)
        if fac.holds:
            facs = fac.certificate["factors"]
            for i, pi in enumerate(facs):
                rest = product(facs[:i] + facs[i + 1:], self.one())
                yield holds(divisor_cert(g, pi, rest, fac.certificate.get("unit")),
                            "factor of alpha*beta", bounds, fac.structural)

    def check_semi_furstenberg(self, beta: GenPoly, samples: list[GenPoly],
                               bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        if beta.is_zero():
            raise ValueError("beta must be nonzero")
        results = []
        for alpha in samples:
            self.require_nonunit(alpha)
            prod = self.mul(alpha, beta)
            found = None
            for v in self._divisor_candidates(prod, bounds):
                if not self.divides(v.certificate["divisor"], beta):
                    found = v
                    break
            if found is None:
                return unknown(bounds, "no divisor of alpha*beta avoiding beta", element=alpha)
            results.append(holds(furstenberg_variant_cert(alpha, [beta], found),
                                 "divisor of alpha*beta", bounds, found.structural))
        return holds({"kind": "samples", "beta": beta, "results": results}, "every sample",
                     bounds, all(r.structural for r in results))

    def check_antimatter(self, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        pi = self.irreducible_example()
        v = self.is_irreducible(pi, bounds)
        if v.holds:
            return refuted({"kind": "irreducible_witness", "element": pi, "proof": v},
                           "explicit irreducible", bounds, v.structural)
        return unknown(bounds, "no irreducible found")

    def irreducible_example(self) -> GenPoly:
        raise NotImplementedError

    def semi_atomic_witness(self) -> GenPoly:
        raise ValueError(f"{self.id.value} has no semi-atomic witness constructor")

    def check_semi_atomic(self, beta: GenPoly, samples: list[GenPoly],
                          bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        if beta.is_zero():
            raise ValueError("beta must be nonzero")
        results = []
        for alpha in samples:
            prod = self.mul(alpha, beta)
            if self.is_unit(prod):
                return refuted({"kind": "sample_failure", "sample": alpha,
                                "reason": "product is a unit"}, "unit product", bounds)
            v = self.is_atomic_elem(prod, bounds)
            if v.refuted:
                return refuted({"kind": "sample_failure", "sample": alpha, "proof": v},
                               "sample product not atomic", bounds, v.structural)
            if v.unknown:
                return unknown(bounds, "sample product undecided", sample=alpha)
            results.append(v)
        return holds({"kind": "samples", "beta": beta, "results": results},
                     "every sample product atomic", bounds)

    def lemma6_transform(self, beta: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
        """Square a non-unit semi-atomic witness; the square is atomic and so
        serves as an almost-atomic multiplier."""
        if self.is_unit(beta):
            raise ValueError("unit beta: a unit semi-atomic witness means the domain is atomic")
        sq = self.mul(beta, beta)
        v = self.is_atomic_elem(sq, bounds)
        if not v.holds:
            return unknown(bounds, "square not shown atomic", beta=beta)
        return holds({"kind": "lemma6", "beta": beta, "square": sq, "factorization": v},
                     "beta squared is atomic", bounds, v.structural)

    def sample_universe(self, rng: random.Random, count: int,
                        bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
        raise NotImplementedError

    # certificates ---------------------------------------------------------
    def verify_structural(self, cert: dict[str, Any]) -> bool:
        return False

    def check_certificate(self, v: Verdict) -> bool:
        if v.outcome is Outcome.UNKNOWN:
            return False
        try:
            return self._check(v.certificate)
        except (KeyError, TypeError, ValueError, ZeroDivisionError, AttributeError):
            return False

    def _check(self, cert: Any) -> bool:
        if isinstance(cert, Verdict):
            return cert.outcome is not Outcome.UNKNOWN and self._check(cert.certificate)
        kind = cert["kind"]
        if kind == "factorization":
            facs = cert["factors"]
            if not all(self.contains(p) and not self.is_unit(p) for p in facs):
                return False
            if not self.units_equal(product(facs, self.one()), cert["target"], cert.get("unit")):
                return False
            return all(self.is_irreducible(p, cert.get("bounds", DEFAULT_BOUNDS)).holds
                       for p in facs)
        if kind == "split":
            l, r = cert["left"], cert["right"]
            return (self.contains(l) and self.contains(r) and not self.is_unit(l)
                    and not self.is_unit(r) and not l.is_zero() and not r.is_zero()
                    and self.units_equal(self.mul(l, r), cert["target"], cert.get("unit")))
        if kind == "divisor":
            d, c = cert["divisor"], cert["cofactor"]
            return (self.contains(d) and self.contains(c)
                    and self.units_equal(self.mul(d, c), cert["target"], cert.get("unit"))
                    and self.is_irreducible(d).holds)
        if kind == "multiplier":
            m = cert["multiplier"]
            facs = cert["multiplier_factors"]
            if facs is not None:
                if product(facs, self.one()) != m:
                    return False
                if not all(self.is_irreducible(p).holds for p in facs):
                    return False
            prod_cert = cert["product"].certificate
            return (prod_cert["target"] == self.mul(cert["target"], m)
                    and self._check(cert["product"]))
        if kind == "furstenberg_variant":
            gammas = cert["gammas"]
            g = product(gammas, self.one())
            dcert = cert["divisor"].certificate
            if dcert["target"] != self.mul(cert["target"], g):
                return False
            if not self._check(cert["divisor"]):
                return False
            return not self.divides(dcert["divisor"], g)
        if kind == "samples":
            return all(self._check(r) for r in cert["results"])
        if kind == "irreducible_witness":
            return self._check(cert["proof"])
        if kind == "sample_failure":
            return self._check(cert["proof"])
        if kind == "lemma6":
            return (cert["square"] == self.mul(cert["beta"], cert["beta"])
                    and self._check(cert["factorization"]))
        if kind == "structural":
            return self.verify_structural(cert)
        if kind == "irreducible":
            return self.verify_structural(cert)
        return False


def split_cert(target: GenPoly, left: GenPoly, right: GenPoly,
               unit: GenPoly | None = None) -> dict[str, Any]:
    return {"kind": "split", "target": target, "left": left, "right": right, "unit": unit}


def factorization_cert(target: GenPoly, factors: list[GenPoly],
                       unit: GenPoly | None = None) -> dict[str, Any]:
    return {"kind": "factorization", "target": target, "factors": list(factors), "unit": unit}


def divisor_cert(target: GenPoly, divisor: GenPoly, cofactor: GenPoly,
                 unit: GenPoly | None = None) -> dict[str, Any]:
    return {"kind": "divisor", "target": target, "divisor": divisor, "cofactor": cofactor,
            "unit": unit}


def multiplier_cert(target: GenPoly, multiplier: GenPoly, multiplier_factors: list | None,
                    product_verdict: Verdict) -> dict[str, Any]:
    return {"kind": "multiplier", "target": target, "multiplier": multiplier,
            "multiplier_factors": multiplier_factors, "product": product_verdict}


def furstenberg_variant_cert(target: GenPoly, gammas: list[GenPoly],
                             divisor_verdict: Verdict) -> dict[str, Any]:
    return {"kind": "furstenberg_variant", "target": target, "gammas": list(gammas),
            "divisor": divisor_verdict}


def structural_cert(rule: str, element: GenPoly, **data: Any) -> dict[str, Any]:
    return {"kind": "structural", "rule": rule, "element": element, **data}


def irreducible_cert(rule: str, element: GenPoly, **data: Any) -> dict[str, Any]:
    return {"kind": "irreducible", "rule": rule, "element": element, **data}


def rational_grid(height: int, max_den: int) -> list[Fraction]:
    vals = {Fraction(n, d) for d in range(1, max_den + 1) for n in range(-height, height + 1)}
    return sorted(vals)
