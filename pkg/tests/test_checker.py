from fractions import Fraction

import pytest

from subatomic.checker import (DAG_EDGES, EXPECTED, ClassificationRow, PropertyId, classify_domain,
                               dag_consistency, propagate, separation_table, verify_row)
from subatomic.domains import DomainId
from subatomic.verdict import DEFAULT_BOUNDS, holds, refuted, unknown

P = PropertyId


def _row(domain, **marks):
    vs = {p: unknown() for p in PropertyId}
    for name, outcome in marks.items():
        vs[PropertyId(name)] = holds({}, "") if outcome else refuted({}, "")
    return ClassificationRow(DomainId(domain), vs)


def test_dag_shape():
    assert len(DAG_EDGES) == 12
    # acyclic: a topological order exists
    order = list(PropertyId)
    assert all(order.index(a) < order.index(b) for a, b in DAG_EDGES)
    nodes = {n for e in DAG_EDGES for n in e}
    assert nodes == set(PropertyId)


def test_dag_consistency_examples():
    assert dag_consistency([_row("d8", Atomic=True, SemiAtomic=True)]).holds
    bad = dag_consistency([_row("d8", SemiAtomic=True, AlmostAtomic=False)])
    assert bad.refuted and bad.certificate["edge"] == ["SemiAtomic", "AlmostAtomic"]
    bad = dag_consistency([_row("d8", QuasiFurstenberg=True, NotAntimatter=False)])
    assert bad.refuted and bad.certificate["edge"] == ["QuasiFurstenberg", "NotAntimatter"]


def test_propagation_fills_only_unknown_slots():
    row = _row("d8", SemiAtomic=True, QuasiFurstenberg=False)
    propagate(row.verdicts, DEFAULT_BOUNDS)
    assert row.verdicts[P.ALMOST_ATOMIC].holds
    assert row.verdicts[P.SEMI_FURSTENBERG].holds  # from SemiAtomic, before the refutation
    assert row.verdicts[P.QUASI_FURSTENBERG].refuted
    assert dag_consistency([row]).refuted


@pytest.mark.parametrize("domain,prop,outcome", [
    ("ma_s4", P.SEMI_ATOMIC, "holds"),
    ("ma_s4", P.FURSTENBERG, "refuted"),
    ("d9", P.QUASI_ATOMIC, "holds"),
    ("d9", P.ALMOST_ATOMIC, "refuted"),
    ("appb", P.ALMOST_ATOMIC, "holds"),
    ("d23", P.QUASI_ATOMIC, "refuted"),
    ("ma_qplus", P.NOT_ANTIMATTER, "refuted"),
])
def test_classification_examples(domain, prop, outcome):
    row = classify_domain(domain)
    assert getattr(row.verdicts[prop], outcome)
    assert verify_row(row) == []


def test_classify_rejects_unknown_and_empty():
    with pytest.raises(ValueError):
        classify_domain("bogus")
    with pytest.raises(ValueError):
        classify_domain("d8", sample_universe=[])


def test_separation_table_examples():
    rows = [classify_domain(d) for d in ("ma_s4", "d23", "d24")]
    seps = {s["separation"]: s for s in separation_table(rows)}
    assert seps["i"]["witnesses"] == ["ma_s4"]
    assert seps["v"]["witnesses"] == ["d23"]
    assert seps["vi"]["witnesses"] == ["d24"]
    assert seps["iii"]["status"] == "OPEN" and seps["iv"]["status"] == "OPEN"


def test_expected_table_covers_every_domain():
    assert set(EXPECTED) == set(DomainId)
