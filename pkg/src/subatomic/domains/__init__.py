"""Adapters for the constructed domains, plus a tag-dispatching function API."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from ..poly import GenPoly
from ..verdict import DEFAULT_BOUNDS, SearchBounds, Verdict
from .appb import AppB, appb_minimal_term, appb_witness
from .base import Domain, DomainId
from .monoid_algebra import MAAppendixA, MAQPlus, MASectionFour
from .polynomial import D8, D9, D23
from .puiseux import D12, D24

_CLASSES: dict[DomainId, type[Domain]] = {
    DomainId.D8: D8,
    DomainId.D9: D9,
    DomainId.D23: D23,
    DomainId.D24: D24,
    DomainId.D12: D12,
    DomainId.MA_QPLUS: MAQPlus,
    DomainId.MA_S4: MASectionFour,
    DomainId.MA_APPA: MAAppendixA,
    DomainId.APPB: AppB,
}

_CACHE: dict[tuple[DomainId, Fraction], Domain] = {}


def parse_domain_id(tag: str | DomainId) -> DomainId:
    try:
        return DomainId(tag)
    except ValueError:
        valid = ", ".join(d.value for d in DomainId)
        raise ValueError(f"unknown domain {tag!r}; valid tags: {valid}") from None


def get_domain(d: str | DomainId, truncation: Fraction | int = 4) -> Domain:
    """Adapter instance for a tag; ``truncation`` only affects D12."""
    did = parse_domain_id(d)
    key = (did, Fraction(truncation) if did is DomainId.D12 else Fraction(0))
    if key not in _CACHE:
        cls = _CLASSES[did]
        _CACHE[key] = cls(truncation) if did is DomainId.D12 else cls()
    return _CACHE[key]


def is_unit(d: str | DomainId, f: GenPoly) -> bool:
    return get_domain(d).is_unit(f)


def is_irreducible(d: str | DomainId, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).is_irreducible(f, bounds)


def divisors_up_to(d: str | DomainId, f: GenPoly,
                   bounds: SearchBounds = DEFAULT_BOUNDS) -> list[GenPoly]:
    return get_domain(d).divisors_up_to(f, bounds)


def is_atomic_elem(d: str | DomainId, f: GenPoly, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).is_atomic_elem(f, bounds)


def min_exponent_decompose(d: str | DomainId, f: GenPoly) -> tuple[Any, GenPoly]:
    dom = get_domain(d)
    if not hasattr(dom, "min_exponent_decompose"):
        raise ValueError(f"{dom.id.value} is not a monoid algebra")
    return dom.min_exponent_decompose(f)


def semi_atomic_witness(d: str | DomainId) -> GenPoly:
    return get_domain(d).semi_atomic_witness()


def check_semi_atomic(d: str | DomainId, beta: GenPoly, samples: list[GenPoly],
                      bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).check_semi_atomic(beta, samples, bounds)


def lemma6_transform(d: str | DomainId, beta: GenPoly,
                     bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).lemma6_transform(beta, bounds)


def almost_atomic_witness_search(d: str | DomainId, f: GenPoly,
                                 bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).almost_atomic_witness_search(f, bounds)


def quasi_atomic_witness_search(d: str | DomainId, f: GenPoly,
                                bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).quasi_atomic_witness_search(f, bounds)


def furstenberg_divisor(d: str | DomainId, f: GenPoly,
                        bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).furstenberg_divisor(f, bounds)


def check_semi_furstenberg(d: str | DomainId, beta: GenPoly, samples: list[GenPoly],
                           bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).check_semi_furstenberg(beta, samples, bounds)


def check_almost_furstenberg(d: str | DomainId, f: GenPoly,
                             bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).check_almost_furstenberg(f, bounds)


def check_quasi_furstenberg(d: str | DomainId, f: GenPoly,
                            bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).check_quasi_furstenberg(f, bounds)


def check_antimatter(d: str | DomainId, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    return get_domain(d).check_antimatter(bounds)


def appb_atomic_by_corollary(f: GenPoly) -> Verdict:
    return get_domain(DomainId.APPB).appb_atomic_by_corollary(f)


def prime_ideal_instance_check(d: str | DomainId,
                               bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    if parse_domain_id(d) is not DomainId.D23:
        raise ValueError("prime ideal instance check is only implemented for d23")
    return get_domain(d).prime_ideal_instance_check(bounds)


def check_certificate(d: str | DomainId, v: Verdict) -> bool:
    return get_domain(d).check_certificate(v)


__all__ = [
    "AppB", "D8", "D9", "D12", "D23", "D24", "Domain", "DomainId", "MAAppendixA", "MAQPlus",
    "MASectionFour", "almost_atomic_witness_search", "appb_atomic_by_corollary",
    "appb_minimal_term", "appb_witness", "check_almost_furstenberg", "check_antimatter",
    "check_certificate", "check_quasi_furstenberg", "check_semi_atomic",
    "check_semi_furstenberg", "divisors_up_to", "furstenberg_divisor", "get_domain",
    "is_atomic_elem", "is_irreducible", "is_unit", "lemma6_transform",
    "min_exponent_decompose", "parse_domain_id", "prime_ideal_instance_check",
    "quasi_atomic_witness_search", "semi_atomic_witness",
]
