import json

import pytest

from subatomic.cli import EXIT_DISAGREE, EXIT_OK, EXIT_USAGE, main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_d23(capsys):
    code, out, _ = run(capsys, "classify", "d23")
    rows = {r["property"]: r for r in json.loads(out)["rows"]}
    assert code == EXIT_OK
    assert rows["Furstenberg"]["outcome"] == "Holds"
    assert rows["QuasiAtomic"]["outcome"] == "Refuted"


def test_classify_ma_qplus(capsys):
    code, out, _ = run(capsys, "classify", "ma_qplus", "--format", "csv")
    assert code == EXIT_OK
    assert "ma_qplus,NotAntimatter,Refuted,no,True" in out


def test_classify_appb_disagrees(capsys):
    code, out, _ = run(capsys, "classify", "appb", "--format", "markdown")
    assert code == EXIT_DISAGREE
    assert "| appb | Furstenberg | Holds-at-bound | no | False |" in out


@pytest.mark.parametrize("args", [("classify", "bogus"), ("atoms", "bogus"), ("verify", "bogus"),
                                  ("frobnicate",), ("classify", "d8", "--bounds-max-factors", "0")])
def test_usage_errors(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == EXIT_USAGE and "error" in err


def test_atoms(capsys):
    code, out, _ = run(capsys, "atoms", "appendix_a", "--index-bound", "2", "--entry-bound", "14")
    atoms = json.loads(out)["atoms"]
    assert code == EXIT_OK and "limit=0; {1:7}" in atoms and "limit=3; {}" in atoms
    _, again, _ = run(capsys, "atoms", "appendix_a", "--index-bound", "2", "--entry-bound", "14")
    assert again == out
    _, out, _ = run(capsys, "atoms", "qplus")
    assert json.loads(out)["atoms"] == []


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "example9")
    assert code == EXIT_OK and out.startswith("PASS example9")


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "csv", "bounds": {"index_bound": 1}}))
    code, out, _ = run(capsys, "atoms", "appendix_a", "--config", str(cfg))
    assert code == EXIT_OK and out.startswith("atom\n")
    code, out, _ = run(capsys, "atoms", "appendix_a", "--config", str(cfg), "--format", "json")
    assert json.loads(out)["bounds"]["index_bound"] == 1
