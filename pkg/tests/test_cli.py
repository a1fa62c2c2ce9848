import json

import pytest

from ising_gap import main


def test_gap_subcommand(settings, capsys, tmp_path):
    path = tmp_path / "gap.json"
    assert main(["gap", "--l", "2", "--beta", "1.0", "--boundary", "alternating", "--json", str(path)]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "l=2 beta=1.0 boundary=alternating rates=exponential" in out
    record = json.loads(path.read_text())
    assert record["error"] is None
    assert record["sandwich"] is True


def test_gap_subcommand_reports_failures(settings, capsys):
    assert main(["gap", "--l", "2", "--beta", "1.0", "--boundary", "bogus"]) == 1
    assert "PlanError" in capsys.readouterr().out


def test_verify_lemmas_subcommand(settings, capsys, tmp_path):
    path = tmp_path / "lemmas.json"
    assert main(["verify-lemmas", "--l", "3", "--samples", "20", "--seed", "1", "--json", str(path)]) == 0
    out = capsys.readouterr().out
    assert "counting-bound" in out
    assert json.loads(path.read_text())["passes"] is True


def test_transition_subcommand(settings, capsys, tmp_path):
    path = tmp_path / "transition.json"
    assert main(["transition", "--beta", "1.0", "--l", "1,2,3", "--delta", "0.5,1.0", "--json", str(path)]) == 0
    report = json.loads(path.read_text())
    assert [entry["delta"] for entry in report["entries"]] == [0.5, 1.0]
    assert all(entry["fit"] is not None for entry in report["entries"])
    assert "slope" in capsys.readouterr().out


def test_trend_subcommand(settings, capsys):
    assert main(["trend", "--beta", "0.5", "--l", "1,2", "--boundary", "free,minus"]) == 0
    assert "not fitted" in capsys.readouterr().out


def test_run_subcommand(settings, tmp_path):
    plan = tmp_path / "small.plan"
    plan.write_text("l = 1,2\nbeta = 1.0\nboundary = plus\nmethod = exact\n")
    csv_path = tmp_path / "records.csv"
    assert main(["run", "--plan", str(plan), "--csv", str(csv_path)]) == 0
    assert len(csv_path.read_text().splitlines()) == 4


def test_missing_plan_exits_with_failure(settings, capsys, tmp_path):
    assert main(["run", "--plan", str(tmp_path / "missing.plan")]) == 1
    assert "run:" in capsys.readouterr().err


def test_bad_list_exits_with_failure(settings):
    assert main(["transition", "--beta", "1.0", "--l", "2,x"]) == 1


def test_argument_errors_exit_through_argparse():
    with pytest.raises(SystemExit):
        main(["gap", "--beta", "1.0"])
    with pytest.raises(SystemExit):
        main(["gap", "--l", "2", "--beta", "1.0", "--rates", "glauber"])
