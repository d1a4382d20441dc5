"""Three-valued search results and the cutoffs that produced them."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Any


class Outcome(str, enum.Enum):
    HOLDS = "Holds"
    REFUTED = "Refuted"
    UNKNOWN = "UnknownAtBound"


@dataclass(frozen=True)
class SearchBounds:
    """Every cutoff used by a bounded search.

    ``index_bound``/``entry_bound`` bound the sequence monoid universe;
    ``refine_bound`` caps the root-of-x refinement used for the Puiseux
    polynomial domains.
    """

    max_degree: Fraction = Fraction(6)
    max_denominator: int = 4
    max_coeff_height: int = 20
    max_factors: int = 12
    max_multiset: int = 6
    index_bound: int = 3
    entry_bound: int = 14
    refine_bound: int = 12

    def __post_init__(self) -> None:
        object.__setattr__(self, "max_degree", Fraction(self.max_degree))
        for name, value in asdict(self).items():
            if value <= 0:
                raise ValueError(f"search bound {name} must be positive, got {value}")

    def with_(self, **changes: Any) -> SearchBounds:
        return replace(self, **changes)

    def to_json(self) -> dict[str, Any]:
        data = asdict(self)
        data["max_degree"] = str(self.max_degree)
        return data


DEFAULT_BOUNDS = SearchBounds()


@dataclass
class Verdict:
    """Result of one property query.

    ``structural`` marks a certificate that proves the claim outright (a
    closed-form rule or an argument that covers every case); otherwise the
    verdict only speaks for the bounded universe that was searched.
    """

    outcome: Outcome
    certificate: dict[str, Any] = field(default_factory=dict)
    bounds: SearchBounds = DEFAULT_BOUNDS
    rule: str = ""
    structural: bool = False

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    @property
    def refuted(self) -> bool:
        return self.outcome is Outcome.REFUTED

    @property
    def unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    def label(self) -> str:
        if self.unknown or self.structural:
            return self.outcome.value
        return f"{self.outcome.value}-at-bound"


def holds(certificate: dict[str, Any], rule: str, bounds: SearchBounds = DEFAULT_BOUNDS,
          structural: bool = False) -> Verdict:
    return Verdict(Outcome.HOLDS, certificate, bounds, rule, structural)


def refuted(certificate: dict[str, Any], rule: str, bounds: SearchBounds = DEFAULT_BOUNDS,
            structural: bool = False) -> Verdict:
    return Verdict(Outcome.REFUTED, certificate, bounds, rule, structural)


def unknown(bounds: SearchBounds = DEFAULT_BOUNDS, rule: str = "search exhausted",
            **info: Any) -> Verdict:
    return Verdict(Outcome.UNKNOWN, dict(info), bounds, rule, False)
