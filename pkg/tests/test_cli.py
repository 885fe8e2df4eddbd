"""Command line: outputs, file formats and exit codes."""
import csv
import io
import json
import subprocess
import sys

import pytest

from elasticurve import ArcSpline, ReductionTrace
from elasticurve.cli import main
from elasticurve.generators import make_necked_dumbbell

from conftest import figure_eight


def _save(path, curve):
    path.write_text(curve.to_json())
    return str(path)


def test_generate_and_analyze(tmp_path, capsys):
    out = tmp_path / "stadium.json"
    assert main(["generate", "stadium", "--r", "1", "--d", "1", "-o", str(out)]) == 0
    c = ArcSpline.from_json(out.read_text())
    assert c.length == pytest.approx(2 * 3.141592653589793 + 2)
    assert main(["analyze", str(out)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["class_tag"] == "Kpi"
    assert rep["metrics"]["energy"] == pytest.approx(3.141592653589793)
    assert {c["name"] for c in rep["checks"]} >= {"main", "gage", "enomoto"}
    assert len(rep["maximal_arcs"]) == 1


def test_analyze_invalid_curve(tmp_path, capsys):
    path = _save(tmp_path / "eight.json", figure_eight())
    assert main(["analyze", path]) == 2
    rep = json.loads(capsys.readouterr().out)
    assert rep["validation"]["violations"][0]["kind"] == "simplicity"


def test_usage_errors(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["analyze", str(bad)]) == 1
    bad.write_text('{"primitives": [{"kind": "blob"}]}')
    assert main(["analyze", str(bad)]) == 1
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1


def test_tolerance_from_environment(tmp_path, monkeypatch):
    path = _save(tmp_path / "c.json", make_necked_dumbbell())
    monkeypatch.setenv("ELASTICURVE_TOL", "banana")
    assert main(["analyze", path, "-o", str(tmp_path / "r.json")]) == 1
    monkeypatch.setenv("ELASTICURVE_TOL", "1e-8")
    assert main(["analyze", path, "-o", str(tmp_path / "r.json")]) == 0


def test_reduce_dumbbell(tmp_path):
    path = _save(tmp_path / "db.json", make_necked_dumbbell())
    trace, cert = tmp_path / "t.jsonl", tmp_path / "cert.json"
    svgs = tmp_path / "frames"
    assert main(["reduce", path, "--trace", str(trace), "--certificate", str(cert),
                 "--svg-dir", str(svgs)]) == 0
    rows = ReductionTrace.read(trace)
    assert rows[0]["procedure"] == 2 and rows[0]["event"] == "pinch"
    c = json.loads(cert.read_text())
    assert c["valid"] and c["route"] == "two_C_curves"
    assert c["chain"] >= 3.141592653589793 ** 3 * (1 - 1e-12)
    assert (svgs / "step_0000.svg").exists() and (svgs / "certificate.svg").exists()


def test_reduce_budget_exhausted(tmp_path):
    path = _save(tmp_path / "db.json", make_necked_dumbbell())
    assert main(["reduce", path, "--trace", str(tmp_path / "t.jsonl"), "--budget", "0",
                 "--certificate", str(tmp_path / "c.json")]) == 3


def test_reduce_rejects_invalid(tmp_path):
    path = _save(tmp_path / "eight.json", figure_eight())
    assert main(["reduce", path, "--trace", str(tmp_path / "t.jsonl"),
                 "--certificate", str(tmp_path / "c.json")]) == 2


def test_verify_random(tmp_path):
    out = tmp_path / "v.csv"
    assert main(["verify", "--family", "random", "--count", "3", "--out", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len({r["curve_id"] for r in rows}) == 3
    assert all(r["status"] != "fail" for r in rows)


def test_verify_figure1_reports_gage_informational(tmp_path):
    out = tmp_path / "f.csv"
    assert main(["verify", "--family", "figure1", "--count", "6", "--out", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    gage = [r for r in rows if r["check"] == "gage"]
    assert any(r["status"] == "informational" for r in gage)
    checks = {r["check"] for r in rows}
    assert "gage_first_violation_n" in checks


def test_flow_and_render(tmp_path, capsys):
    curve = tmp_path / "circle.json"
    assert main(["generate", "circle", "-o", str(curve)]) == 0
    out = tmp_path / "flow.csv"
    assert main(["flow", str(curve), "--n", "128", "--steps", "400", "--out", str(out)]) == 0
    assert out.read_text().startswith("t,L,A,E,dLdt,bound")
    svg = tmp_path / "c.svg"
    assert main(["render", str(curve), "-o", str(svg), "--certificate"]) == 0
    assert "class=\"held\"" in svg.read_text()


def test_generate_rejects_infeasible(tmp_path):
    assert main(["generate", "rounded_square", "--side", "2", "--radius", "5",
                 "-o", str(tmp_path / "x.json")]) == 1


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "elasticurve.cli", "generate", "circle"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["class"] == "K"
