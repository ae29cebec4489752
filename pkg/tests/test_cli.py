import json
from pathlib import Path

import plotgarden.cli as cli
from plotgarden.cli import run_cli
from plotgarden.workspace import parse_workspace

FIXTURES = str(Path(__file__).resolve().parent.parent / "fixtures.ws")


def ref(name):
    return FIXTURES + "#" + name


def test_validate(capsys):
    assert run_cli(["validate", FIXTURES]) == 0
    out = capsys.readouterr().out
    assert "15 objects validated" in out
    assert len([l for l in out.splitlines() if l.startswith("ok ")]) == 15


def test_verify_plot(tmp_path, capsys):
    report = tmp_path / "sierp.json"
    assert run_cli(["verify", ref("sierp"), "--report", str(report)]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out
    doc = json.loads(report.read_text())
    assert doc["passed"] is True
    assert len(doc["records"]) == 11


def test_verify_garden(capsys):
    assert run_cli(["verify", ref("sierp_garden")]) == 0
    out = capsys.readouterr().out
    assert "LAW.240B" in out and "LAW.250L" in out


def test_verify_lentile_map(capsys):
    assert run_cli(["verify", ref("tight")]) == 0
    out = capsys.readouterr().out
    assert "LAW.230D" in out and "LAW.250N.R" in out


def test_verify_non_lentile_map(tmp_path, capsys):
    report = tmp_path / "homeo.json"
    assert run_cli(["verify", ref("homeo"), "--report", str(report)]) == 0
    out = capsys.readouterr().out
    assert "not a lentile map" in out
    doc = json.loads(report.read_text())
    assert doc["classification"]["is_lentile"] is False


def test_check_map(tmp_path, capsys):
    report = tmp_path / "homeo.json"
    assert run_cli(["check-map", ref("homeo"), "--report", str(report)]) == 0
    out = capsys.readouterr().out
    assert "is_lentile" in out
    doc = json.loads(report.read_text())
    assert doc["classification"]["is_plot_map"] is True
    assert doc["classification"]["minus_condition"] is False


def test_lift_and_harvest(capsys):
    assert run_cli(["lift", ref("sierp")]) == 0
    out = capsys.readouterr().out
    assert "box" in out and "{Q}" in out
    assert run_cli(["harvest", ref("sierp_garden")]) == 0
    out = capsys.readouterr().out
    assert "(P;{};^{Q})" in out


def test_unit_commands(capsys):
    assert run_cli(["unit", "--geometric", ref("sierp")]) == 0
    out = capsys.readouterr().out
    assert "P  ->  (P;{};^{Q})" in out
    assert run_cli(["unit", "--algebraic", ref("sierp_garden")]) == 0
    assert run_cli(["unit", "--algebraic", ref("sierp")]) == 2
    assert run_cli(["unit", "--geometric", ref("sierp_garden")]) == 2


def test_oracle_command(capsys):
    assert run_cli(["oracle", "ORACLE.HARVEST", ref("sierp_garden")]) == 0
    assert run_cli(["oracle", "LAW.220G", ref("sierp")]) == 0
    assert run_cli(["oracle", "LAW.999", ref("sierp")]) == 2


def test_bad_inputs(tmp_path, capsys):
    assert run_cli(["verify", ref("nope")]) == 2
    assert run_cli(["verify", str(tmp_path / "missing.ws") + "#x"]) == 2
    assert run_cli(["verify", "no-separator"]) == 2
    assert run_cli(["lift", ref("sierp_garden")]) == 2
    bad = tmp_path / "bad.ws"
    bad.write_text("{broken")
    assert run_cli(["validate", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "error:" in err


def test_help_and_missing_command():
    assert run_cli(["--help"]) == 0
    assert run_cli([]) == 2


def test_fuzz_deterministic(tmp_path, capsys):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(["fuzz", "--seed", "3", "--count", "8",
                    "--report", str(r1)]) == 0
    assert run_cli(["fuzz", "--seed", "3", "--count", "8",
                    "--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()
    out = capsys.readouterr().out
    assert "8/8 instances pass" in out
    doc = json.loads(r1.read_text())
    assert doc["passed"] is True and len(doc["runs"]) == 8


def test_fuzz_bad_profile():
    assert run_cli(["fuzz", "--seed", "1", "--profile", "shrubs=3"]) == 2


def test_fuzz_failure_writes_counterexample(tmp_path, capsys, monkeypatch):
    def fake_suite(kind, obj):
        return [{"id": "LAW.210C", "passed": kind != "garden",
                 "witness": None}]
    monkeypatch.setattr(cli, "_safe_suite", fake_suite)
    report = tmp_path / "run.json"
    assert run_cli(["fuzz", "--seed", "3", "--count", "4",
                    "--report", str(report)]) == 1
    captured = capsys.readouterr()
    assert "FAIL" in captured.out
    assert "counterexample written" in captured.err
    cex = tmp_path / "run.cex.ws"
    assert cex.exists()
    ws = parse_workspace(cex.read_text())
    assert ws.category_of("cex") == "gardens"
