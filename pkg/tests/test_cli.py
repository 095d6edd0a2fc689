import json
from pathlib import Path

import pytest

from glab.cli import main
from glab.scenario import (ParseError, UnknownOperation, UnresolvedReference, run_scenario)
from glab.suites import UnknownSuite, run_suite

SCEN = Path(__file__).resolve().parents[1] / "scenarios"


def test_elementary_scenario_passes():
    rep = run_scenario(SCEN / "elementary.json")
    assert rep.ok and rep.exit_code == 0 and len(rep.entries) == 6


def test_corrupted_scenario_fails_with_witness():
    rep = run_scenario(SCEN / "corrupted.json")
    (entry,) = rep.entries
    assert entry.verdict == "fail" and rep.exit_code == 1
    w = entry.witness
    assert set(w) == {"g", "h", "x", "y", "product"}


def test_empty_scenario():
    rep = run_scenario("{}")
    assert rep.entries == [] and rep.exit_code == 0
    assert rep.to_json()["schema"] == "glab-report-1"


@pytest.mark.parametrize("name", ["elementary", "type_two", "p_group", "pauli"])
def test_bundled_scenarios_pass(name):
    assert run_scenario(SCEN / f"{name}.json").ok


def test_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        run_scenario('{"field": {"p": 5},\n  "build": [,]}')
    assert (exc.value.line, exc.value.col) == (2, 13)


def test_reference_and_operation_errors():
    with pytest.raises(UnknownOperation):
        run_scenario({"build": [{"name": "x", "op": "frobnicate"}]})
    with pytest.raises(UnknownOperation):
        run_scenario({"check": [{"op": "frobnicate"}]})
    with pytest.raises(UnresolvedReference):
        run_scenario({"check": [{"op": "verify_grading", "grading": "R"}]})
    with pytest.raises(UnresolvedReference):
        run_scenario({"group": {"orders": [2]}, "field": {"p": 5},
                      "build": [{"name": "T", "op": "type1", "assoc": "R"},
                                {"name": "R", "op": "elementary", "degrees": [0, 1]}]})


def test_errors_inside_checks_become_error_verdicts():
    rep = run_scenario({"group": {"orders": [3]}, "field": {"p": 3},
                        "build": [{"name": "R", "op": "elementary", "degrees": [0, 1, 2]}],
                        "check": [{"op": "corollary", "grading": "R"}]})
    assert rep.entries[0].verdict == "error" and "HypothesisViolated" in rep.entries[0].error
    assert rep.exit_code == 1


def test_reports_are_byte_identical(tmp_path):
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    assert main(["run", str(SCEN / "p_group.json"), "--report", str(a)]) == 0
    assert main(["run", str(SCEN / "p_group.json"), "--report", str(b), "--jobs", "4"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["run", str(SCEN / "p_group.json"), "--report", str(c), "--seed", "99"]) == 0
    assert json.loads(c.read_text())["seed"] == 99
    assert json.loads(a.read_text())["seed"] == 7


def test_timing_is_opt_in(tmp_path):
    out = tmp_path / "t.json"
    main(["run", str(SCEN / "elementary.json"), "--report", str(out), "--timing"])
    assert all("timing_ms" in e for e in json.loads(out.read_text())["checks"])
    main(["run", str(SCEN / "elementary.json"), "--report", str(out)])
    assert not any("timing_ms" in e for e in json.loads(out.read_text())["checks"])


def test_exit_codes(tmp_path, capsys):
    assert main(["run", str(SCEN / "corrupted.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert main(["run", str(bad)]) == 2
    assert main(["run", str(tmp_path / "missing.json")]) == 2
    assert main(["suite", "no-such-suite"]) == 2
    assert main(["bogus"]) == 2


def test_suite_command(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert main(["suite", "divided-powers", "--report", str(out)]) == 0
    assert "PASS" in capsys.readouterr().out
    doc = json.loads(out.read_text())
    assert doc["schema"] == "glab-report-1" and doc["ok"] and doc["failures"] == 0


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("unknown-name")
