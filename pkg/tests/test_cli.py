import json
import subprocess
import sys

import pytest

from momentlab import cli


def run_cli(*args, env=None):
    import os

    e = dict(os.environ)
    e.pop("MOMENTLAB_SEED", None)
    if env:
        e.update(env)
    return subprocess.run([sys.executable, "-m", "momentlab.cli", *args], capture_output=True, text=True, env=e)


@pytest.mark.parametrize("args,expected", [
    (["kloosterman", "1", "1", "3"], "-1"),
    (["floorroot", "72"], "6"),
    (["scriptH", "0.5", "0.25", "0.25", "4"], "0.444444444444"),
    (["ramanujan", "4", "8"], "-4"),
    (["mobius", "30"], "-1"),
    (["tau", "4", "3"], "6"),
    (["delta2", "6", "2", "5", "3"], "20"),
    (["gamma", "0.5"], "1.77245385091"),
    (["A", "0", "0", "0", "1", "6"], "90"),
])
def test_compute_outputs(args, expected, capsys):
    assert cli.main(["compute", *args]) == 0
    assert capsys.readouterr().out.strip() == expected


@pytest.mark.parametrize("argv", [
    ["compute", "nosuchthing", "1"],
    ["compute", "kloosterman", "1", "1"],
    ["compute", "kloosterman", "1", "1", "0"],
    ["compute", "floorroot", "x"],
    ["run", "no.such.suite"],
    ["run", "expsums.H", "--bogus", "3"],
    ["run", "expsums.H", "--grid", "medium"],
])
def test_usage_errors_exit_2(argv, tmp_path):
    assert cli.main(argv + (["--out", str(tmp_path / "r.json")] if argv[0] == "run" else [])) == 2


def test_run_small_grid_report(tmp_path):
    out = tmp_path / "h.json"
    assert cli.main(["run", "expsums.H", "--grid", "small", "--out", str(out)]) == 0
    raw = out.read_text(encoding="utf-8")
    doc = json.loads(raw)
    assert doc["schema"] == 1
    assert doc["summary"]["passed"] == doc["summary"]["total"] > 0
    assert raw == json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def test_complex_values_serialize_as_pairs():
    from momentlab.report import SuiteReport, compare

    rep = SuiteReport("x")
    rep.add(compare({"z": 1 + 2j}, 1 + 2j, 1 + 2j, 1e-12))
    doc = json.loads(rep.to_json(include_timing=False))
    assert doc["cases"][0]["lhs"] == [1.0, 2.0] and doc["cases"][0]["inputs"]["z"] == [1.0, 2.0]


def test_jobs_do_not_change_report(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["run", "expsums.A", "--quick", "--out", str(a)]) == 0
    assert cli.main(["run", "expsums.A", "--quick", "--jobs", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_and_seed(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text("seed = 4\n[combinatorics.ledger]\nn = 50\n", encoding="utf-8")
    out = tmp_path / "l.json"
    assert cli.main(["run", "combinatorics.ledger", "--config", str(cfg), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["params"]["n"] == 50 and doc["config"]["seed"] == 4
    r = run_cli("run", "combinatorics.ledger", "--config", str(cfg), "--out", str(out), env={"MOMENTLAB_SEED": "9"})
    assert r.returncode == 0
    assert json.loads(out.read_text())["config"]["seed"] == 9


def test_numeric_failure_exits_1(tmp_path):
    out = tmp_path / "p.json"
    assert cli.main(["run", "eisenstein.printed_form", "--quick", "--out", str(out)]) == 1
    assert json.loads(out.read_text())["summary"]["passed"] < json.loads(out.read_text())["summary"]["total"]


def test_parameter_alias(tmp_path):
    out = tmp_path / "e.json"
    assert cli.main(["run", "eisenstein.closed_vs_series", "--quick", "--N", "6", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["config"]["params"]["Nmax"] == 6


def test_list_and_module_entry():
    r = run_cli("list")
    assert r.returncode == 0 and "expsums.H" in r.stdout
