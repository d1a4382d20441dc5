"""Evaluate every property on every domain, propagate along the implication
DAG, and compare against the static table of claimed values."""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .domains import Domain, DomainId, get_domain, parse_domain_id
from .poly import GenPoly
from .verdict import DEFAULT_BOUNDS, Outcome, SearchBounds, Verdict, holds, refuted, unknown


class PropertyId(str, enum.Enum):
    ATOMIC = "Atomic"
    SEMI_ATOMIC = "SemiAtomic"
    ALMOST_ATOMIC = "AlmostAtomic"
    QUASI_ATOMIC = "QuasiAtomic"
    FURSTENBERG = "Furstenberg"
    SEMI_FURSTENBERG = "SemiFurstenberg"
    ALMOST_FURSTENBERG = "AlmostFurstenberg"
    QUASI_FURSTENBERG = "QuasiFurstenberg"
    NOT_ANTIMATTER = "NotAntimatter"


P = PropertyId

#: P -> Q means every domain with P has Q
DAG_EDGES: tuple[tuple[PropertyId, PropertyId], ...] = (
    (P.ATOMIC, P.SEMI_ATOMIC),
    (P.SEMI_ATOMIC, P.ALMOST_ATOMIC),
    (P.ALMOST_ATOMIC, P.QUASI_ATOMIC),
    (P.ATOMIC, P.FURSTENBERG),
    (P.SEMI_ATOMIC, P.SEMI_FURSTENBERG),
    (P.ALMOST_ATOMIC, P.ALMOST_FURSTENBERG),
    (P.QUASI_ATOMIC, P.QUASI_FURSTENBERG),
    (P.FURSTENBERG, P.SEMI_FURSTENBERG),
    (P.FURSTENBERG, P.ALMOST_FURSTENBERG),
    (P.SEMI_FURSTENBERG, P.QUASI_FURSTENBERG),
    (P.ALMOST_FURSTENBERG, P.QUASI_FURSTENBERG),
    (P.QUASI_FURSTENBERG, P.NOT_ANTIMATTER),
)

D = DomainId
#: claimed values; anything absent is "open"
EXPECTED: dict[DomainId, dict[PropertyId, str]] = {
    D.MA_S4: {P.SEMI_ATOMIC: "yes", P.FURSTENBERG: "no"},
    D.D12: {P.SEMI_FURSTENBERG: "yes", P.ALMOST_FURSTENBERG: "yes", P.FURSTENBERG: "no"},
    D.D23: {P.FURSTENBERG: "yes", P.QUASI_ATOMIC: "no"},
    D.D24: {P.QUASI_FURSTENBERG: "no", P.NOT_ANTIMATTER: "yes"},
    D.D8: {P.ALMOST_ATOMIC: "yes", P.ATOMIC: "no"},
    D.D9: {P.QUASI_ATOMIC: "yes", P.ALMOST_ATOMIC: "no"},
    D.MA_APPA: {P.SEMI_ATOMIC: "yes", P.ATOMIC: "no"},
    D.APPB: {P.ALMOST_ATOMIC: "yes", P.FURSTENBERG: "no"},
    D.MA_QPLUS: {P.NOT_ANTIMATTER: "no"},
}

#: (label, property that holds, property that fails)
SEPARATIONS: tuple[tuple[str, PropertyId, PropertyId], ...] = (
    ("i", P.SEMI_ATOMIC, P.FURSTENBERG),
    ("ii", P.ALMOST_ATOMIC, P.SEMI_FURSTENBERG),
    ("iii", P.QUASI_ATOMIC, P.ALMOST_FURSTENBERG),
    ("iv", P.SEMI_FURSTENBERG, P.ALMOST_FURSTENBERG),
    ("v", P.FURSTENBERG, P.QUASI_ATOMIC),
    ("vi", P.NOT_ANTIMATTER, P.QUASI_FURSTENBERG),
)
#: separations whose only known witness is a construction this package omits
NOT_IMPLEMENTED = {"ii"}


@dataclass
class ClassificationRow:
    domain: DomainId
    verdicts: dict[PropertyId, Verdict]
    expected: dict[PropertyId, str] = field(default_factory=dict)
    samples: list[GenPoly] = field(default_factory=list)

    def agrees(self, prop: PropertyId) -> bool:
        exp = self.expected.get(prop, "open")
        v = self.verdicts[prop]
        if exp == "yes":
            return v.holds
        if exp == "no":
            return v.refuted
        return True

    def all_agree(self) -> bool:
        return all(self.agrees(p) for p in PropertyId)


def _per_sample(samples: list[GenPoly], check: Callable[[GenPoly], Verdict],
                bounds: SearchBounds, what: str) -> Verdict:
    """Refuted on the first refuted sample, Holds if all hold."""
    results = []
    pending = None
    for f in samples:
        v = check(f)
        if v.refuted:
            return refuted({"kind": "sample_failure", "sample": f, "proof": v},
                           f"{what} fails for a sample", bounds, v.structural)
        if v.unknown and pending is None:
            pending = f
        results.append(v)
    if pending is not None:
        return unknown(bounds, f"{what} undecided for a sample", sample=pending)
    return holds({"kind": "samples", "results": results}, f"{what} holds on every sample",
                 bounds, False)


def _semi_atomic(dom: Domain, samples: list[GenPoly], bounds: SearchBounds) -> Verdict:
    try:
        beta = dom.semi_atomic_witness()
    except ValueError:
        beta = dom.one()
    v = dom.check_semi_atomic(beta, samples, bounds)
    if v.refuted:
        # a failing beta says nothing about other betas
        return unknown(bounds, "fixed multiplier fails on a sample", beta=beta)
    return v


def _not_antimatter(dom: Domain, bounds: SearchBounds) -> Verdict:
    v = dom.check_antimatter(bounds)
    if v.refuted:
        return holds(v.certificate, v.rule, bounds, v.structural)
    if v.holds:
        return refuted(v.certificate, v.rule, bounds, v.structural)
    return v


def propagate(verdicts: dict[PropertyId, Verdict], bounds: SearchBounds) -> None:
    """Fill undecided slots by pushing Holds forward and Refuted backward."""
    changed = True
    while changed:
        changed = False
        for a, b in DAG_EDGES:
            va, vb = verdicts[a], verdicts[b]
            if va.holds and vb.unknown:
                verdicts[b] = holds({"kind": "implication", "from": a.value, "to": b.value},
                                    f"{a.value} implies {b.value}", bounds, va.structural)
                changed = True
            elif vb.refuted and va.unknown:
                verdicts[a] = refuted({"kind": "implication", "from": b.value, "to": a.value},
                                      f"not {b.value} implies not {a.value}", bounds,
                                      vb.structural)
                changed = True


def classify_domain(d: str | DomainId, bounds: SearchBounds = DEFAULT_BOUNDS,
                    sample_universe: list[GenPoly] | None = None, *, seed: int = 0,
                    count: int = 12, truncation: Fraction | int = 4) -> ClassificationRow:
    did = parse_domain_id(d)
    dom = get_domain(did, truncation)
    samples = sample_universe
    if samples is None:
        samples = dom.sample_universe(random.Random(seed), count, bounds)
    if not samples:
        raise ValueError("sample universe must be nonempty")
    for f in samples:
        dom.require_nonunit(f)
    vs: dict[PropertyId, Verdict] = {
        P.ATOMIC: _per_sample(samples, lambda f: dom.is_atomic_elem(f, bounds), bounds,
                              "factorization"),
        P.SEMI_ATOMIC: _semi_atomic(dom, samples, bounds),
        P.ALMOST_ATOMIC: _per_sample(
            samples, lambda f: dom.almost_atomic_witness_search(f, bounds), bounds,
            "irreducible multiplier"),
        P.QUASI_ATOMIC: _per_sample(
            samples, lambda f: dom.quasi_atomic_witness_search(f, bounds), bounds, "multiplier"),
        P.FURSTENBERG: _per_sample(samples, lambda f: dom.furstenberg_divisor(f, bounds),
                                   bounds, "irreducible divisor"),
        P.SEMI_FURSTENBERG: dom.check_semi_furstenberg(dom.semi_furstenberg_beta(), samples,
                                                       bounds),
        P.ALMOST_FURSTENBERG: _per_sample(
            samples, lambda f: dom.check_almost_furstenberg(f, bounds), bounds,
            "divisor avoiding an irreducible product"),
        P.QUASI_FURSTENBERG: _per_sample(
            samples, lambda f: dom.check_quasi_furstenberg(f, bounds), bounds,
            "divisor avoiding a multiplier"),
        P.NOT_ANTIMATTER: _not_antimatter(dom, bounds),
    }
    propagate(vs, bounds)
    return ClassificationRow(did, vs, dict(EXPECTED.get(did, {})), list(samples))


def verify_row(row: ClassificationRow, truncation: Fraction | int = 4) -> list[PropertyId]:
    """Properties whose certificate fails independent re-verification."""
    dom = get_domain(row.domain, truncation)
    bad = []
    for p, v in row.verdicts.items():
        if v.unknown:
            continue
        cert = v.certificate
        if cert.get("kind") == "implication":
            src = PropertyId(cert["from"])
            edge = (src, p) if v.holds else (p, src)
            ok = edge in DAG_EDGES and (row.verdicts[src].outcome is v.outcome)
        else:
            ok = dom.check_certificate(v)
        if not ok:
            bad.append(p)
    return bad


def dag_consistency(rows: list[ClassificationRow]) -> Verdict:
    for row in rows:
        for a, b in DAG_EDGES:
            if row.verdicts[a].holds and row.verdicts[b].refuted:
                return refuted({"kind": "dag_violation", "domain": row.domain.value,
                                "edge": [a.value, b.value],
                                "verdicts": [row.verdicts[a].label(), row.verdicts[b].label()]},
                               f"{row.domain.value}: {a.value} holds but {b.value} refuted")
    return holds({"kind": "dag", "rows": len(rows), "edges": len(DAG_EDGES)},
                 "no row violates an implication")


def separation_table(rows: list[ClassificationRow]) -> list[dict[str, Any]]:
    out = []
    for label, yes, no in SEPARATIONS:
        witnesses = [r.domain.value for r in rows
                     if r.verdicts[yes].holds and r.verdicts[no].refuted]
        if witnesses:
            status = "WITNESSED"
        elif label in NOT_IMPLEMENTED:
            status = "NOT_IMPLEMENTED"
        else:
            status = "OPEN"
        out.append({"separation": label, "holds": yes.value, "fails": no.value,
                    "status": status, "witnesses": witnesses})
    return out


# serialization ----------------------------------------------------------------

def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Verdict):
        return {"outcome": obj.outcome.value, "label": obj.label(), "rule": obj.rule,
                "structural": obj.structural, "certificate": to_jsonable(obj.certificate)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, SearchBounds):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    return str(obj)


def row_records(row: ClassificationRow, bounds: SearchBounds) -> list[dict[str, Any]]:
    recs = []
    for p in PropertyId:
        v = row.verdicts[p]
        recs.append({"domain": row.domain.value, "property": p.value,
                     "outcome": v.outcome.value, "label": v.label(), "rule": v.rule,
                     "certificate": to_jsonable(v.certificate), "bounds": bounds.to_json(),
                     "expected": row.expected.get(p, "open"), "agrees": row.agrees(p)})
    return recs


def matrix_report(rows: list[ClassificationRow], bounds: SearchBounds) -> dict[str, Any]:
    return {
        "rows": [rec for row in rows for rec in row_records(row, bounds)],
        "dag_consistency": to_jsonable(dag_consistency(rows)),
        "separations": separation_table(rows),
        "all_agree": all(r.all_agree() for r in rows),
    }


def dumps(report: Any) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def classify_all(bounds: SearchBounds = DEFAULT_BOUNDS, *, seed: int = 0, count: int = 12,
                 truncation: Fraction | int = 4) -> list[ClassificationRow]:
    return [classify_domain(d, bounds, seed=seed, count=count, truncation=truncation)
            for d in DomainId]


__all__ = [
    "ClassificationRow", "DAG_EDGES", "EXPECTED", "Outcome", "PropertyId", "SEPARATIONS",
    "classify_all", "classify_domain", "dag_consistency", "dumps", "matrix_report",
    "propagate", "row_records", "separation_table", "to_jsonable", "verify_row",
]
