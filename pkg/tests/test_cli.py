import json

import pytest

from hmsbench.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, out


def test_verify_hms_exit_zero(capsys):
    code, out = run(capsys, "verify-hms", "--weights", "1,1,1")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1 and rep["passed"]
    assert rep["invariant"] and rep["gauge"]


def test_verify_hms_mismatch_exit_one(capsys):
    code, out = run(capsys, "verify-hms", "--weights", "4,2,1", "--q-target", "2")
    rep = json.loads(out)
    assert code == 1 and rep["certificate"]


def test_invalid_config_exit_two(capsys):
    assert main(["bside", "--weights", "2,2,2"]) == 2
    assert main(["verify-hms", "--theta", "unit", "--q-target", "2"]) == 2
    assert main(["aside", "--weights", "1,x,2"]) == 2
    assert main(["aside", "--weights", "1,1,1", "--areas", "1,2"]) == 2


def test_reports_are_deterministic(capsys):
    _, a = run(capsys, "aside", "--weights", "1,2,3")
    _, b = run(capsys, "aside", "--weights", "1,2,3")
    assert a == b


def test_monodromy_command(capsys):
    code, out = run(capsys, "monodromy", "--weights", "4,2,1")
    rep = json.loads(out)
    assert code == 0
    assert rep["merges"]["0"]["numeric"] == [1, 5]


def test_mutate_command(capsys):
    code, out = run(capsys, "mutate", "--fn-check", "5,3")
    assert code == 0 and json.loads(out)["passed"]
    code, out = run(capsys, "mutate", "--weights", "1,1,2")
    assert code == 0


def test_product_and_f1(capsys):
    assert run(capsys, "product", "--weights", "1,1")[0] == 0
    assert run(capsys, "product", "--f1")[0] == 0


def test_bside_checks(capsys):
    code, out = run(capsys, "bside", "--weights", "1,2,3", "--hilbert", "12", "--koszul-degree", "5", "--cohomology")
    rep = json.loads(out)
    assert code == 0 and rep["hilbert"]["matches_enumeration"] and rep["koszul"]["d_squared_zero"]


def test_formats(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HMSBENCH_OUT_DIR", str(tmp_path))
    assert main(["aside", "--weights", "1,1,1", "--format", "svg", "--out", "arcs.svg"]) == 0
    assert (tmp_path / "arcs.svg").read_text().startswith("<svg")
    code, out = run(capsys, "aside", "--weights", "1,1,1", "--format", "csv")
    assert code == 0 and out.startswith("key,value")
    assert main(["verify-hms", "--format", "svg"]) == 2


def test_report_all(capsys):
    code, out = run(capsys, "report-all", "--max-n", "5", "--workers", "2")
    rep = json.loads(out)
    assert code == 0 and rep["failed"] == [] and "3,1,1" in rep["instances"]
