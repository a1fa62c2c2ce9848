#!/usr/bin/env python3
"""
Command-line entry point of ising-gap.

Subcommands:
    run             Runs an experiment plan file and writes its CSV / JSON outputs.
    gap             Exact gap, bounds and trap probability at one point.
    verify-lemmas   Randomized energy-estimate suites and the contour counting bound.
    transition      Gap decay fits for slab boundaries of several widths.
    trend           Gap decay of several boundaries side by side (free vs plus by default).
    simulate        Relaxation time of an observable from simulated trajectories.

Every subcommand exits with status 1 if any of its points failed or any of its checks did not hold.

Usage:
    python ising_gap.py run --plan plans/trend.plan
    python ising_gap.py gap --l 3 --beta 1.5 --boundary alternating --rates exponential
    python ising_gap.py verify-lemmas --l 6 --samples 1000 --seed 0
    python ising_gap.py transition --beta 2 --l 2,3,4 --delta 0.25,0.5,0.75,1.0
"""

import argparse
import logging
import sys
from typing import Any, Dict, Optional, Sequence

from config import get_log_level, get_settings
from contours import TrapEvent
from contours.trap import DEFAULT_DELTA
from exceptions import IsingGapError
from experiments import (ExperimentPlan, boundary_trend, run_plan, run_point, transition_study, verify_lemmas,
                         write_json, write_plan_outputs, write_records_csv)
from boundaries import parse_boundary_descriptor
from gibbs import build_gibbs, center_sign
from hamiltonian import constant_configuration
from lattice import build_box
from rates import RATE_KINDS, make_rates
from simulator import OBSERVABLES, estimate_relaxation, make_observable, simulate_replicas, write_samples_csv
from utils import format_float, parse_number_list, status_line

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)


def _describe(record: Dict[str, Any]) -> str:
    """Helper function to render one record as a status line.

    :param record: The record.
    :return: The line.
    """

    point = "l={} beta={} boundary={} rates={}".format(record["l"], format_float(record["beta"]), record["boundary"],
                                                     record["rates"])
    if record.get("error"):
        return status_line(False, "{}: {}".format(point, record["error"]))
    text = "{}: gap={} ({}) lower={} upper={} mu_trap={} epsilon={}".format(
        point, format_float(record["gap"]), record["method"], format_float(record["schonmann_lower"]),
        format_float(record["indicator_upper"]) or "-", format_float(record["mu_trap"]) or "-", record["epsilon"])
    return status_line(record["sandwich"] is not False, text)


# region Subcommands

def _run(args: argparse.Namespace) -> int:
    plan = ExperimentPlan.from_file(args.plan)
    records = run_plan(plan)
    for record in records:
        print(_describe(record))
    write_plan_outputs(plan, records)
    if args.csv:
        write_records_csv(args.csv, records)
    if args.json:
        write_json(args.json, {"schema": "ising-gap-records v1", "records": records})
    return 1 if any(r["error"] or r["sandwich"] is False for r in records) else 0


def _gap(args: argparse.Namespace) -> int:
    plan = ExperimentPlan([args.l], [args.beta], [args.boundary], rates=args.rates, method="exact",
                          delta_1=args.delta_1)
    record = run_point(args.l, args.beta, args.boundary, plan)
    print(_describe(record))
    if args.json:
        write_json(args.json, record)
    return 1 if record["error"] or record["sandwich"] is False else 0


def _verify_lemmas(args: argparse.Namespace) -> int:
    report = verify_lemmas(args.l, args.samples, args.seed)
    for name, suite in report["suites"].items():
        print(status_line(suite["violations"] == 0, "{}: {} instances, {} skipped, {} violations"
                          .format(name, suite["instances"], suite["skipped"], suite["violations"])))
    if args.json:
        write_json(args.json, report)
    return 0 if report["passes"] else 1


def _print_entries(report: Dict[str, Any], label: str) -> bool:
    """Helper function to print the entries of a trend report.

    :param report: The report.
    :param label: The entry key naming each series.
    :return: Whether every point succeeded.
    """

    ok = True
    for entry in report["entries"]:
        gaps = ", ".join(format_float(g) or "-" for g in entry["gaps"])
        fit = entry["fit"]
        slope = format_float(fit["slope"]) if fit else "not fitted"
        print(status_line(not entry["errors"], "{}={}: gaps [{}], slope {}".format(label, entry[label], gaps, slope)))
        ok = ok and not entry["errors"]
    return ok


def _transition(args: argparse.Namespace) -> int:
    report = transition_study(parse_number_list(args.l, int), args.beta, parse_number_list(args.delta, float),
                              args.rates)
    ok = _print_entries(report, "delta")
    if report["decay_weakens_with_delta"] is not None:
        print(status_line(report["decay_weakens_with_delta"], "decay rate weakens as delta grows"))
    if args.json:
        write_json(args.json, report)
    return 0 if ok else 1


def _trend(args: argparse.Namespace) -> int:
    descriptors = [d.strip() for d in args.boundary.split(",") if d.strip()]
    report = boundary_trend(parse_number_list(args.l, int), args.beta, descriptors, args.rates)
    ok = _print_entries(report, "boundary")
    if args.json:
        write_json(args.json, report)
    return 0 if ok else 1


def _simulate(args: argparse.Namespace) -> int:
    settings = get_settings()
    box = build_box(args.l)
    omega = parse_boundary_descriptor(args.boundary, box)
    rates = make_rates(args.rates, args.beta)
    trajectories = simulate_replicas(box, omega, rates, constant_configuration(box, 1), args.t_max, args.seed,
                                     args.replicas, settings)
    epsilon = center_sign(build_gibbs(box, args.beta, omega, settings)) \
        if box.get_size() <= settings.get_enumeration_limit() else 1
    trap = TrapEvent.from_delta(args.l, epsilon, DEFAULT_DELTA)
    if args.csv:
        observables = {name: make_observable(name, box, trap) for name in OBSERVABLES}
        write_samples_csv(args.csv, trajectories, observables, args.dt or 0.1, args.burn_in)

    estimate = estimate_relaxation(trajectories, args.observable, args.burn_in, dt=args.dt, trap=trap,
                                   seed=args.seed)
    print(status_line(True, "{}: tau={} +- {} (R^2={}), rate 1/tau={}".format(
        estimate.observable, format_float(estimate.tau), format_float(estimate.stderr),
        format_float(estimate.r_squared), format_float(estimate.get_rate()))))
    if args.json:
        write_json(args.json, estimate.to_record())
    return 0

# endregion Subcommands


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ising-gap",
                                     description="Spectral gaps of Glauber dynamics under mixed boundary conditions.")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run an experiment plan")
    run.add_argument("--plan", required=True, help="plan file")
    run.add_argument("--csv", help="also write the records to this CSV file")
    run.add_argument("--json", help="also write the records to this JSON file")
    run.set_defaults(handler=_run)

    gap = commands.add_parser("gap", help="exact gap and bounds at one point")
    gap.add_argument("--l", type=int, required=True)
    gap.add_argument("--beta", type=float, required=True)
    gap.add_argument("--boundary", default="plus", help="boundary descriptor, e.g. slab:0.5")
    gap.add_argument("--rates", default="exponential", choices=RATE_KINDS)
    gap.add_argument("--delta-1", dest="delta_1", type=float, help="trap length fraction")
    gap.add_argument("--json")
    gap.set_defaults(handler=_gap)

    lemmas = commands.add_parser("verify-lemmas", help="randomized energy-estimate suites")
    lemmas.add_argument("--l", type=int, default=6, help="largest side length")
    lemmas.add_argument("--samples", type=int, default=1000)
    lemmas.add_argument("--seed", type=int, default=0)
    lemmas.add_argument("--json")
    lemmas.set_defaults(handler=_verify_lemmas)

    transition = commands.add_parser("transition", help="gap decay for slab boundaries")
    transition.add_argument("--beta", type=float, required=True)
    transition.add_argument("--l", default="2,3,4", help="comma-separated side lengths")
    transition.add_argument("--delta", default="0.25,0.5,0.75,1.0", help="comma-separated slab widths")
    transition.add_argument("--rates", default="exponential", choices=RATE_KINDS)
    transition.add_argument("--json")
    transition.set_defaults(handler=_transition)

    trend = commands.add_parser("trend", help="gap decay of several boundaries")
    trend.add_argument("--beta", type=float, required=True)
    trend.add_argument("--l", default="2,3,4", help="comma-separated side lengths")
    trend.add_argument("--boundary", default="free,plus", help="comma-separated boundary descriptors")
    trend.add_argument("--rates", default="exponential", choices=RATE_KINDS)
    trend.add_argument("--json")
    trend.set_defaults(handler=_trend)

    simulate = commands.add_parser("simulate", help="relaxation time from simulated trajectories")
    simulate.add_argument("--l", type=int, required=True)
    simulate.add_argument("--beta", type=float, required=True)
    simulate.add_argument("--boundary", default="plus")
    simulate.add_argument("--rates", default="exponential", choices=RATE_KINDS)
    simulate.add_argument("--t-max", dest="t_max", type=float, default=1000.0)
    simulate.add_argument("--burn-in", dest="burn_in", type=float, default=100.0)
    simulate.add_argument("--replicas", type=int, default=4)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--dt", type=float, help="sampling step")
    simulate.add_argument("--observable", default="trap_indicator", choices=OBSERVABLES)
    simulate.add_argument("--csv", help="stream thinned samples to this CSV file")
    simulate.add_argument("--json")
    simulate.set_defaults(handler=_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parses the command line and runs the subcommand.

    :param argv: The arguments, sys.argv[1:] if None.
    :return: The exit status.
    """

    logging.getLogger().setLevel(get_log_level())
    args = _parser().parse_args(argv)
    try:
        return args.handler(args)
    except (IsingGapError, ValueError) as e:
        _logger.error("%s failed: %s", args.command, e)
        print(status_line(False, "{}: {}".format(args.command, e)), file=sys.stderr)
        return 1


if __name__ == '__main__':
    # Load environment variables from .env file
    from dotenv import load_dotenv
    load_dotenv()
    sys.exit(main())
