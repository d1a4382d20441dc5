"""Command-line front end: ``subatomic {classify,atoms,verify,matrix}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Any, Sequence

from . import monoids as M
from .checker import (ClassificationRow, classify_all, classify_domain, dag_consistency, dumps,
                      matrix_report, row_records, separation_table)
from .domains import DomainId, parse_domain_id
from .procedures import PROCEDURES
from .verdict import SearchBounds

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


@dataclass
class Config:
    bounds: SearchBounds
    truncation_order: Fraction = Fraction(4)
    sample_seed: int = 0
    samples: int = 12
    output_format: str = "json"


_BOUND_FIELDS = [f.name for f in fields(SearchBounds)]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    for name in _BOUND_FIELDS:
        flag = "--bounds-" + name.replace("_", "-")
        aliases = [flag]
        if name in ("index_bound", "entry_bound"):
            aliases.append("--" + name.replace("_", "-"))
        common.add_argument(*aliases, dest=name, default=None,
                            type=Fraction if name == "max_degree" else int)
    common.add_argument("--format", choices=["json", "markdown", "csv"], default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--samples", type=int, default=None,
                        help="sample universe size per domain")
    common.add_argument("--truncation", type=Fraction, default=None,
                        help="truncation order for the power-series domain")
    common.add_argument("--config", default=None, help="JSON file; explicit flags win")

    p = _Parser(prog="subatomic", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", parents=[common], help="classify one domain")
    c.add_argument("domain")
    a = sub.add_parser("atoms", parents=[common], help="atoms of a bounded exponent monoid")
    a.add_argument("monoid")
    v = sub.add_parser("verify", parents=[common], help="run a named verification procedure")
    v.add_argument("tag")
    sub.add_parser("matrix", parents=[common], help="full classification matrix")
    return p


def load_config(ns: argparse.Namespace) -> Config:
    data: dict[str, Any] = {}
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}") from None
    bound_data = dict(data.get("bounds", {}))
    for name in _BOUND_FIELDS:
        if getattr(ns, name) is not None:
            bound_data[name] = getattr(ns, name)
    unknown_keys = set(bound_data) - set(_BOUND_FIELDS)
    if unknown_keys:
        raise UsageError(f"unknown bound(s): {', '.join(sorted(unknown_keys))}")
    try:
        bounds = SearchBounds(**bound_data)
        trunc = Fraction(ns.truncation if ns.truncation is not None
                         else data.get("truncation", 4))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None

    def pick(flag: Any, key: str, default: Any) -> Any:
        return flag if flag is not None else data.get(key, default)

    fmt = pick(ns.format, "format", "json")
    if fmt not in ("json", "markdown", "csv"):
        raise UsageError(f"unknown format {fmt!r}")
    return Config(bounds, trunc, int(pick(ns.seed, "seed", 0)), int(pick(ns.samples, "samples", 12)),
                  fmt)


# --- rendering ---------------------------------------------------------------

_TABLE_COLS = ["domain", "property", "label", "expected", "agrees", "rule"]


def render_records(records: list[dict[str, Any]], fmt: str, extra: dict[str, Any]) -> str:
    if fmt == "json":
        return dumps({"rows": records, **extra})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_TABLE_COLS)
        for r in records:
            w.writerow([r[c] for c in _TABLE_COLS])
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(_TABLE_COLS) + " |", "|" + "---|" * len(_TABLE_COLS)]
    for r in records:
        lines.append("| " + " | ".join(str(r[c]) for c in _TABLE_COLS) + " |")
    if "separations" in extra:
        lines += ["", "| separation | holds | fails | status | witnesses |", "|---|---|---|---|---|"]
        for s in extra["separations"]:
            lines.append(f"| {s['separation']} | {s['holds']} | {s['fails']} | {s['status']} | "
                         f"{', '.join(s['witnesses']) or '-'} |")
    if "dag_consistency" in extra:
        lines += ["", f"DAG consistency: {extra['dag_consistency']['label']}"]
    return "\n".join(lines)


# --- commands ----------------------------------------------------------------

def _classify_row(tag: str, cfg: Config) -> ClassificationRow:
    return classify_domain(tag, cfg.bounds, seed=cfg.sample_seed, count=cfg.samples,
                           truncation=cfg.truncation_order)


def cmd_classify(tag: str, cfg: Config) -> tuple[int, str]:
    try:
        did = parse_domain_id(tag)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    row = _classify_row(did.value, cfg)
    text = render_records(row_records(row, cfg.bounds), cfg.output_format, {})
    return (EXIT_OK if row.all_agree() else EXIT_DISAGREE), text


def cmd_atoms(tag: str, cfg: Config) -> tuple[int, str]:
    try:
        mid = M.MonoidId(tag)
    except ValueError:
        valid = ", ".join(m.value for m in M.MonoidId)
        raise UsageError(f"unknown monoid {tag!r}; valid tags: {valid}") from None
    atoms = [str(a) for a in M.atoms_up_to(mid, cfg.bounds)]
    if cfg.output_format == "json":
        return EXIT_OK, dumps({"monoid": mid.value, "bounds": cfg.bounds.to_json(),
                               "atoms": atoms})
    if cfg.output_format == "csv":
        return EXIT_OK, "\n".join(["atom"] + atoms)
    return EXIT_OK, "\n".join(f"- {a}" for a in atoms) if atoms else "(no atoms)"


def cmd_verify(tag: str, cfg: Config) -> tuple[int, str]:
    if tag == "all":
        tags = list(PROCEDURES)
    elif tag in PROCEDURES:
        tags = [tag]
    else:
        raise UsageError(f"unknown tag {tag!r}; valid tags: all, {', '.join(PROCEDURES)}")
    checks = [PROCEDURES[t]() for t in tags]
    ok = all(c.passed for c in checks)
    summary = f"{sum(c.passed for c in checks)}/{len(checks)} passed"
    return (EXIT_OK if ok else EXIT_DISAGREE), "\n".join([c.line() for c in checks] + [summary])


def cmd_matrix(cfg: Config) -> tuple[int, str]:
    rows = classify_all(cfg.bounds, seed=cfg.sample_seed, count=cfg.samples,
                        truncation=cfg.truncation_order)
    rep = matrix_report(rows, cfg.bounds)
    extra = {k: v for k, v in rep.items() if k != "rows"}
    text = render_records(rep["rows"], cfg.output_format, extra)
    dag_ok = dag_consistency(rows).holds
    ok = dag_ok and rep["all_agree"]
    return (EXIT_OK if ok else EXIT_DISAGREE), text


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = load_config(ns)
        if ns.command == "classify":
            code, text = cmd_classify(ns.domain, cfg)
        elif ns.command == "atoms":
            code, text = cmd_atoms(ns.monoid, cfg)
        elif ns.command == "verify":
            code, text = cmd_verify(ns.tag, cfg)
        else:
            code, text = cmd_matrix(cfg)
    except UsageError as exc:
        print(f"subatomic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
