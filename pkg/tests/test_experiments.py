import json
import math

import pytest

from exceptions import InsufficientDataError, PlanError
from experiments import (RECORD_COLUMNS, ExperimentPlan, boundary_trend, fit_decay_rate, free_boundary_trend,
                         run_plan, run_point, transition_study, verify_lemmas, write_json, write_plan_outputs,
                         write_records_csv)

PLAN_TEXT = """
# free against plus at moderate beta
l = 1,2
l = 3
beta = 0.5, 1.5
boundary = free
boundary = slab:0.5
rates = heat-bath
method = exact
seed = 7
delta_1 = 0.9   # trap length fraction
wall_time = yes
"""


# region Plans

def test_plan_from_text():
    plan = ExperimentPlan.from_text(PLAN_TEXT)
    assert plan.get_ls() == (1, 2, 3)
    assert plan.get_betas() == (0.5, 1.5)
    assert plan.get_boundaries() == ("free", "slab:0.5")
    assert plan.get_rates() == "heat-bath"
    assert plan.get_seed() == 7
    assert plan.get_delta_1() == 0.9
    assert plan.get_wall_time()
    assert plan.get_observable() == "trap_indicator"
    assert len(plan.grid()) == 12
    assert plan.grid()[0] == (1, 0.5, "free")


def test_plan_text_round_trip():
    plan = ExperimentPlan.from_text(PLAN_TEXT)
    assert ExperimentPlan.from_text(plan.to_text()) == plan
    assert ExperimentPlan() == ExperimentPlan.from_text("")


def test_plan_from_file(tmp_path):
    path = tmp_path / "trend.plan"
    path.write_text(PLAN_TEXT)
    assert ExperimentPlan.from_file(str(path)) == ExperimentPlan.from_text(PLAN_TEXT)
    with pytest.raises(PlanError):
        ExperimentPlan.from_file(str(tmp_path / "missing.plan"))


@pytest.mark.parametrize("text", [
    "colour = red\n",
    "l = 2\nl = x\n",
    "beta 1.0\n",
    "seed = 1\nseed = 2\n",
    "rates = glauber\n",
    "method = guess\n",
    "observable = energy\n",
    "t_max = 10\nburn_in = 20\n",
    "delta_1 = 1.5\n",
    "wall_time = maybe\n",
    "l = 0\n",
    "beta = -1\n",
])
def test_bad_plans(text):
    with pytest.raises(PlanError):
        ExperimentPlan.from_text(text)


def test_unknown_constructor_key():
    with pytest.raises(PlanError):
        ExperimentPlan([2], [1.0], ["plus"], colour="red")

# endregion Plans


# region Grid points

def test_empty_plan_runs_nothing(settings):
    assert run_plan(ExperimentPlan(), settings) == []


def test_exact_point(settings):
    plan = ExperimentPlan([2], [1.0], ["plus"], method="exact")
    record = run_point(2, 1.0, "plus", plan, settings)
    assert tuple(record) == RECORD_COLUMNS
    assert record["error"] is None
    assert record["method"] == "dense_eig"
    assert record["epsilon"] == 1
    assert 0.0 < record["mu_trap"] < 1.0
    assert record["schonmann_lower"] == pytest.approx(math.exp(-16.0) / 4.0)
    assert record["schonmann_lower"] <= record["gap"] <= record["indicator_upper"]
    assert record["sandwich"] is True
    assert record["tau"] is None


def test_guard_is_recorded(settings):
    plan = ExperimentPlan([6], [1.0], ["plus"], method="exact")
    record = run_point(6, 1.0, "plus", plan, settings)
    assert record["error"].startswith("GuardError: ")
    assert record["gap"] is None
    assert record["sandwich"] is None


def test_bad_descriptor_is_recorded(settings):
    plan = ExperimentPlan([2], [1.0], ["bogus"], wall_time=True)
    record = run_point(2, 1.0, "bogus", plan, settings)
    assert record["error"].startswith("PlanError: ")
    assert record["wall_time"] >= 0.0


def test_run_plan_keeps_grid_order(settings):
    plan = ExperimentPlan([1, 2], [0.5, 1.0], ["plus", "minus"], workers=3)
    records = run_plan(plan, settings)
    assert [(r["l"], r["beta"], r["boundary"]) for r in records] == plan.grid()
    assert all(r["error"] is None for r in records)
    # Global spin flip maps the plus and minus dynamics onto each other
    assert records[0]["gap"] == pytest.approx(records[1]["gap"], rel=1e-9)
    assert records[0]["epsilon"] == 1 and records[1]["epsilon"] == -1


@pytest.mark.slow
def test_simulation_point(settings):
    plan = ExperimentPlan([2], [0.0], ["plus"], method="simulation", observable="center_spin", t_max=300.0,
                          burn_in=10.0, replicas=2, seed=1)
    record = run_point(2, 0.0, "plus", plan, settings)
    assert record["error"] is None
    assert record["method"] == "simulation"
    assert record["gap"] == pytest.approx(2.0, rel=0.2)
    assert record["tau_stderr"] is not None
    assert record["sandwich"] is None

# endregion Grid points


# region Trend studies

def test_fit_decay_rate():
    fit = fit_decay_rate([1, 2, 3], [math.exp(-1.0), math.exp(-2.0), math.exp(-3.0)])
    assert fit.slope == pytest.approx(-1.0)
    assert fit.intercept == pytest.approx(0.0, abs=1e-12)
    assert fit.points == 3
    with pytest.raises(InsufficientDataError):
        fit_decay_rate([1, 2], [1.0, 0.5])
    with pytest.raises(ValueError):
        fit_decay_rate([1, 2, 3], [1.0, 0.5])
    with pytest.raises(ValueError):
        fit_decay_rate([1, 2, 3], [1.0, 0.0, 0.5])


def test_boundary_trend(settings):
    report = boundary_trend([1, 2, 3], 1.0, ["free", "plus"], settings=settings)
    free, plus = report["entries"]
    assert free["gaps"][0] == pytest.approx(2.0)
    assert free["fit"] is not None and plus["fit"] is not None
    assert len(plus["ratio_to_first"]) == 3
    assert "ratio_to_first" not in free
    assert free_boundary_trend([1, 2, 3], 1.0, settings=settings)["kind"] == "free-boundary-trend"


def test_transition_declines_fit_with_one_length(settings):
    report = transition_study([2], 1.0, [0.5, 1.0], settings=settings)
    assert [entry["delta"] for entry in report["entries"]] == [0.5, 1.0]
    assert all(entry["fit"] is None for entry in report["entries"])
    assert all(entry["gaps"][0] > 0 for entry in report["entries"])
    assert report["decay_weakens_with_delta"] is None


def test_transition_records_guard_errors(settings):
    report = transition_study([2, 6], 1.0, [1.0], settings=settings)
    entry = report["entries"][0]
    assert entry["gaps"][1] is None
    assert entry["errors"]["6"].startswith("GuardError")


def test_transition_rejects_delta():
    with pytest.raises(ValueError):
        transition_study([2], 1.0, [0.0])

# endregion Trend studies


def test_verify_lemmas():
    report = verify_lemmas(4, 50, seed=3)
    assert report["passes"]
    assert report["counts"]["4"] == 2
    assert report["counts"]["6"] == 6
    assert report["suites"]["energy-identity"]["instances"] == 50
    assert all(suite["violations"] == 0 for suite in report["suites"].values())
    with pytest.raises(ValueError):
        verify_lemmas(1, 10)


# region Output files

def test_records_csv(tmp_path, settings):
    plan = ExperimentPlan([2], [1.0], ["plus"], wall_time=True)
    records = run_plan(plan, settings)
    path = tmp_path / "out" / "records.csv"
    write_records_csv(str(path), records)
    lines = path.read_text().splitlines()
    assert lines[0] == "# schema: ising-gap-records v1"
    assert lines[1] == ",".join(RECORD_COLUMNS + ("wall_time",))
    cells = lines[2].split(",")
    assert cells[RECORD_COLUMNS.index("sandwich")] == "true"
    assert cells[RECORD_COLUMNS.index("tau")] == ""
    assert len(lines) == 3


def test_plan_outputs(tmp_path, settings):
    csv_path, json_path = tmp_path / "run.csv", tmp_path / "run.json"
    plan = ExperimentPlan([1], [1.0], ["free"], csv=str(csv_path), json=str(json_path))
    records = run_plan(plan, settings)
    write_plan_outputs(plan, records)
    report = json.loads(json_path.read_text())
    assert report["schema"] == "ising-gap-records v1"
    assert report["records"][0]["gap"] == pytest.approx(2.0)
    assert csv_path.read_text().startswith("# schema: ising-gap-records v1\n")


def test_json_is_sorted(tmp_path):
    path = tmp_path / "report.json"
    write_json(str(path), {"b": 1, "a": [1.5, None]})
    assert path.read_text() == '{\n  "a": [\n    1.5,\n    null\n  ],\n  "b": 1\n}\n'

# endregion Output files
