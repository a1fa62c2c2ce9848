#!/usr/bin/env python3
"""
Experiment plans and the sweeps built on them.

A plan is a grid over side lengths, inverse temperatures and boundary descriptors, with one rate
family and a method policy: exact diagonalisation when l^2 is at most the exact-site limit,
simulation above it. run_plan() returns one record per grid point in grid order; a point that
raises an IsingGapError is recorded with its message and the sweep moves on.

Plan text format, one "key = value" per line, '#' starts a comment:
    l = 2,3,4           (repeatable; comma lists allowed)
    beta = 1.5          (repeatable; comma lists allowed)
    boundary = alternating   (repeatable, one descriptor per line)
    rates = exponential
    method = auto       (auto | exact | simulation)
    seed = 0
    t_max = 1000.0
    burn_in = 100.0
    replicas = 4
    workers = 2
    observable = trap_indicator
    delta_1 = 0.97
    csv = results/run.csv
    json = results/run.json
    wall_time = false

Usage:
    plan = ExperimentPlan.from_file("plans/trend.plan")
    records = run_plan(plan)
    write_records_csv("results/trend.csv", records)
"""

from concurrent.futures import ThreadPoolExecutor
import csv
import json
import logging
import math
import os
import time
from itertools import product
import numpy as np
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from boundaries import CustomBoundary, parse_boundary_descriptor
from config import Settings, get_log_level, get_settings
from contours import (MAX_COUNT_LENGTH, TrapEvent, check_lemma31, check_lemma32, count_contours_through,
                      counting_bound, delta_H, half_delta_identity, random_contour_instance, trap_indicator)
from contours.trap import DEFAULT_DELTA
from exceptions import HypothesisError, InsufficientDataError, IsingGapError, PlanError
from gibbs import MATERIALISE_SITE_LIMIT, build_gibbs, center_sign, event_probability
from hamiltonian import constant_configuration
from lattice import Bond, Box, Site, build_box, dual_of
from rates import RATE_KINDS, make_rates
from simulator import OBSERVABLES, estimate_relaxation, make_observable, observable_series, simulate_replicas
from spectral import build_generator, exact_gap, indicator_upper_bound, schonmann_lower_bound
from utils import format_float, make_rng, parse_number_list

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

RECORD_SCHEMA = "ising-gap-records v1"
RECORD_COLUMNS = ("l", "beta", "boundary", "rates", "method", "gap", "residual", "tau", "tau_stderr",
                  "schonmann_lower", "indicator_upper", "mu_trap", "epsilon", "delta_1", "sandwich", "error")

METHODS = ("auto", "exact", "simulation")

# Relative slack when checking lower <= gap <= upper
_SANDWICH_TOLERANCE = 1e-9

# Contour lengths enumerated by the counting suite
COUNTING_LENGTHS = tuple(m for m in (4, 6, 8, 10, 12) if m <= MAX_COUNT_LENGTH)

LEMMA_SUITES = ("energy-identity", "lemma31-a", "lemma32-a", "lemma32-b", "counting-bound")


class ExperimentPlan(object):
    """
    ExperimentPlan class for a declarative sweep.

    Attributes
        _LS             The side lengths, in plan order.
        _BETAS          The inverse temperatures, in plan order.
        _BOUNDARIES     The boundary descriptors, in plan order.
        _RATES          The rate family name.
        _METHOD         The method policy, one of METHODS.
        _SEED           The seed of every random stream.
        _T_MAX          The simulation horizon.
        _BURN_IN        The simulation burn-in.
        _REPLICAS       The number of simulated replicas per point.
        _WORKERS        Concurrent grid points, or None for the configured default.
        _OBSERVABLE     The observable used for simulated relaxation times.
        _DELTA_1        The trap length fraction, or None to derive it from the default (w1) constant.
        _CSV            The CSV output path, or None.
        _JSON           The JSON output path, or None.
        _WALL_TIME      Whether records carry their wall time.
    """

    _DEFAULTS = {"rates": "exponential", "method": "auto", "seed": 0, "t_max": 1000.0, "burn_in": 100.0,
                 "replicas": 4, "workers": None, "observable": "trap_indicator", "delta_1": None, "csv": None,
                 "json": None, "wall_time": False}

    # region Constructors

    def __init__(self, ls: Sequence[int] = (), betas: Sequence[float] = (), boundaries: Sequence[str] = (),
                 **options: Any) -> None:
        """Initialisation of ExperimentPlan class.

        :param ls: The side lengths.
        :param betas: The inverse temperatures.
        :param boundaries: The boundary descriptors.
        :param options: Scalar keys of the plan format; unknown keys are rejected.
        """

        unknown = set(options) - set(self._DEFAULTS)
        if unknown:
            raise PlanError("Unknown plan keys: {}".format(", ".join(sorted(unknown))))
        values = dict(self._DEFAULTS, **options)

        # Sanity check
        if any(int(l) != l or l < 1 for l in ls):
            raise PlanError("Side lengths must be positive integers, got {}".format(list(ls)))
        if any(not math.isfinite(b) or b < 0 for b in betas):
            raise PlanError("Inverse temperatures must be finite and non-negative, got {}".format(list(betas)))
        if values["rates"] not in RATE_KINDS:
            raise PlanError("Unknown rate family '{}', expected one of {}".format(values["rates"], ", ".join(RATE_KINDS)))
        if values["method"] not in METHODS:
            raise PlanError("Unknown method '{}', expected one of {}".format(values["method"], ", ".join(METHODS)))
        if values["observable"] not in OBSERVABLES:
            raise PlanError("Unknown observable '{}', expected one of {}"
                            .format(values["observable"], ", ".join(OBSERVABLES)))
        if not values["t_max"] > values["burn_in"] >= 0:
            raise PlanError("Need t_max > burn_in >= 0, got t_max={}, burn_in={}"
                            .format(values["t_max"], values["burn_in"]))
        if values["replicas"] < 1 or (values["workers"] is not None and values["workers"] < 1):
            raise PlanError("replicas and workers must be positive")
        if values["delta_1"] is not None and not 0.0 < values["delta_1"] < 1.0:
            raise PlanError("delta_1 must lie in (0, 1), got {}".format(values["delta_1"]))

        self._LS = tuple(int(l) for l in ls)
        self._BETAS = tuple(float(b) for b in betas)
        self._BOUNDARIES = tuple(b.strip() for b in boundaries)
        self._RATES = values["rates"]
        self._METHOD = values["method"]
        self._SEED = int(values["seed"])
        self._T_MAX = float(values["t_max"])
        self._BURN_IN = float(values["burn_in"])
        self._REPLICAS = int(values["replicas"])
        self._WORKERS = None if values["workers"] is None else int(values["workers"])
        self._OBSERVABLE = values["observable"]
        self._DELTA_1 = None if values["delta_1"] is None else float(values["delta_1"])
        self._CSV = values["csv"]
        self._JSON = values["json"]
        self._WALL_TIME = bool(values["wall_time"])

    @classmethod
    def from_text(cls, text: str) -> "ExperimentPlan":
        """Parses the plan text format.

        :param text: The plan text.
        :return: The plan.
        """

        grid = {"l": [], "beta": [], "boundary": []}
        options: Dict[str, Any] = {}
        casts = {"rates": str, "method": str, "observable": str, "csv": str, "json": str, "seed": int,
                 "replicas": int, "workers": int, "t_max": float, "burn_in": float, "delta_1": float,
                 "wall_time": _parse_bool}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise PlanError("Line {}: expected 'key = value', got '{}'".format(number, raw.strip()))
            key, value = (part.strip() for part in line.split("=", 1))
            try:
                if key == "l":
                    grid[key].extend(parse_number_list(value, int))
                elif key == "beta":
                    grid[key].extend(parse_number_list(value, float))
                elif key == "boundary":
                    grid[key].append(value)
                elif key in casts:
                    if key in options:
                        raise PlanError("Line {}: key '{}' given twice".format(number, key))
                    options[key] = casts[key](value)
                else:
                    raise PlanError("Line {}: unknown key '{}'".format(number, key))
            except ValueError as e:
                if isinstance(e, PlanError):
                    raise
                raise PlanError("Line {}: invalid value for '{}': {}".format(number, key, e))
        return cls(grid["l"], grid["beta"], grid["boundary"], **options)

    @classmethod
    def from_file(cls, path: str) -> "ExperimentPlan":
        try:
            with open(path) as handle:
                return cls.from_text(handle.read())
        except OSError as e:
            _logger.error("Could not read plan %s: %s", path, e)
            raise PlanError("Could not read plan {}: {}".format(path, e))

    def __repr__(self) -> str:
        """Overriden __repr__ of ExperimentPlan class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": l={}, beta={}, boundary={}, rates={}, method={}, seed={}" \
            .format(self._LS, self._BETAS, self._BOUNDARIES, self._RATES, self._METHOD, self._SEED)

    def __eq__(self, other: "ExperimentPlan") -> bool:
        """Overriden __eq__ of ExperimentPlan class.

        Two plans are equal if they have the same text representation.

        :param other: The other instance of the ExperimentPlan class.
        :return: Whether the two instances are equal.
        """

        return isinstance(other, ExperimentPlan) and self.to_text() == other.to_text()

    # endregion Constructors

    # region Getter methods

    def get_ls(self) -> Tuple[int, ...]:
        return self._LS

    def get_betas(self) -> Tuple[float, ...]:
        return self._BETAS

    def get_boundaries(self) -> Tuple[str, ...]:
        return self._BOUNDARIES

    def get_rates(self) -> str:
        return self._RATES

    def get_method(self) -> str:
        return self._METHOD

    def get_seed(self) -> int:
        return self._SEED

    def get_t_max(self) -> float:
        return self._T_MAX

    def get_burn_in(self) -> float:
        return self._BURN_IN

    def get_replicas(self) -> int:
        return self._REPLICAS

    def get_workers(self) -> Optional[int]:
        return self._WORKERS

    def get_observable(self) -> str:
        return self._OBSERVABLE

    def get_delta_1(self) -> Optional[float]:
        return self._DELTA_1

    def get_csv(self) -> Optional[str]:
        return self._CSV

    def get_json(self) -> Optional[str]:
        return self._JSON

    def get_wall_time(self) -> bool:
        return self._WALL_TIME

    # endregion Getter methods

    def grid(self) -> List[Tuple[int, float, str]]:
        return list(product(self._LS, self._BETAS, self._BOUNDARIES))

    def to_text(self) -> str:
        """Dumps the plan in its text format, one grid value per line.

        :return: The text, parsed back by from_text() into an equal plan.
        """

        lines = ["l = {}".format(l) for l in self._LS]
        lines += ["beta = {}".format(format_float(b)) for b in self._BETAS]
        lines += ["boundary = {}".format(b) for b in self._BOUNDARIES]
        scalars = (("rates", self._RATES), ("method", self._METHOD), ("seed", self._SEED),
                   ("t_max", format_float(self._T_MAX)), ("burn_in", format_float(self._BURN_IN)),
                   ("replicas", self._REPLICAS), ("workers", self._WORKERS), ("observable", self._OBSERVABLE),
                   ("delta_1", None if self._DELTA_1 is None else format_float(self._DELTA_1)),
                   ("csv", self._CSV), ("json", self._JSON), ("wall_time", "true" if self._WALL_TIME else "false"))
        lines += ["{} = {}".format(key, value) for key, value in scalars if value is not None]
        return "\n".join(lines) + "\n"


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ValueError("expected true or false, got '{}'".format(text))


# region Grid points

def _trap_for(l: int, epsilon: int, delta_1: Optional[float]) -> TrapEvent:
    return TrapEvent(l, epsilon, delta_1) if delta_1 is not None else TrapEvent.from_delta(l, epsilon, DEFAULT_DELTA)


def _sandwich(lower: Optional[float], gap: Optional[float], upper: Optional[float]) -> Optional[bool]:
    if lower is None or gap is None or upper is None:
        return None
    return lower <= gap * (1.0 + _SANDWICH_TOLERANCE) and gap <= upper * (1.0 + _SANDWICH_TOLERANCE)


def _exact_point(box: Box, beta: float, descriptor: str, plan: ExperimentPlan, settings: Settings,
                 record: Dict[str, Any]) -> None:
    """Helper function to fill a record by exact diagonalisation.

    :param box: The box.
    :param beta: The inverse temperature.
    :param descriptor: The boundary descriptor.
    :param plan: The plan.
    :param settings: The settings.
    :param record: The record to fill.
    """

    rates = make_rates(plan.get_rates(), beta)
    gen = build_generator(box, parse_boundary_descriptor(descriptor, box), rates, settings)
    result = exact_gap(gen, witness=False)
    epsilon = center_sign(gen.get_gibbs())
    trap = _trap_for(box.get_side(), epsilon, plan.get_delta_1())
    record.update(method=result.method, gap=result.gap, residual=result.residual, epsilon=epsilon,
                  delta_1=trap.get_delta_1())

    if box.get_size() <= MATERIALISE_SITE_LIMIT:
        mask = trap_indicator(box, epsilon, trap.get_delta_1())
        mu_trap = event_probability(gen.get_gibbs(), mask)
        record["mu_trap"] = mu_trap
        if 0.0 < mu_trap < 1.0:
            try:
                record["indicator_upper"] = indicator_upper_bound(gen, mask)
            except ValueError as e:
                _logger.warning("Indicator bound skipped at l=%d, beta=%s, %s: %s", box.get_side(), beta,
                                descriptor, e)


def _simulation_point(box: Box, beta: float, descriptor: str, plan: ExperimentPlan, settings: Settings,
                      record: Dict[str, Any]) -> None:
    """Helper function to fill a record from simulated relaxation times.

    :param box: The box.
    :param beta: The inverse temperature.
    :param descriptor: The boundary descriptor.
    :param plan: The plan.
    :param settings: The settings.
    :param record: The record to fill.
    """

    omega = parse_boundary_descriptor(descriptor, box)
    rates = make_rates(plan.get_rates(), beta)
    trajectories = simulate_replicas(box, omega, rates, constant_configuration(box, 1), plan.get_t_max(),
                                     plan.get_seed(), plan.get_replicas(), settings)

    if box.get_size() <= settings.get_enumeration_limit():
        epsilon = center_sign(build_gibbs(box, beta, omega, settings))
    else:
        observable = make_observable("center_spin", box)
        dt = (plan.get_t_max() - plan.get_burn_in()) / 1000.0
        mean = float(np.mean([observable_series(tr, observable, dt, plan.get_burn_in())[1].mean()
                              for tr in trajectories]))
        epsilon = 1 if mean >= 0 else -1
    trap = _trap_for(box.get_side(), epsilon, plan.get_delta_1())

    estimate = estimate_relaxation(trajectories, plan.get_observable(), plan.get_burn_in(), trap=trap,
                                   seed=plan.get_seed())
    record.update(method="simulation", gap=estimate.get_rate(), tau=estimate.tau, tau_stderr=estimate.stderr,
                  epsilon=epsilon, delta_1=trap.get_delta_1())


def run_point(l: int, beta: float, descriptor: str, plan: ExperimentPlan, settings: Optional[Settings] = None) \
        -> Dict[str, Any]:
    """Computes the record of one grid point.

    :param l: The side length.
    :param beta: The inverse temperature.
    :param descriptor: The boundary descriptor.
    :param plan: The plan.
    :param settings: The settings; read from the environment if None.
    :return: The record; its "error" column holds the message of an IsingGapError, if one was raised.
    """

    settings = get_settings(settings)
    record: Dict[str, Any] = {column: None for column in RECORD_COLUMNS}
    record.update(l=l, beta=beta, boundary=descriptor, rates=plan.get_rates())
    started = time.perf_counter()
    try:
        box = build_box(l)
        exact = plan.get_method() == "exact" or \
            (plan.get_method() == "auto" and box.get_size() <= settings.get_exact_site_limit())
        if exact:
            _exact_point(box, beta, descriptor, plan, settings, record)
        else:
            _simulation_point(box, beta, descriptor, plan, settings, record)
        record["schonmann_lower"] = schonmann_lower_bound(l, beta, make_rates(plan.get_rates(), beta).q_lower())
        record["sandwich"] = _sandwich(record["schonmann_lower"], record["gap"], record["indicator_upper"])
    except IsingGapError as e:
        _logger.error("Grid point l=%d, beta=%s, boundary=%s failed: %s", l, beta, descriptor, e)
        record["error"] = "{}: {}".format(e.__class__.__name__, e)
    if plan.get_wall_time():
        record["wall_time"] = time.perf_counter() - started
    return record


def run_plan(plan: ExperimentPlan, settings: Optional[Settings] = None) -> List[Dict[str, Any]]:
    """Runs every grid point of a plan.

    :param plan: The plan.
    :param settings: The settings; read from the environment if None.
    :return: The records, in grid order.
    """

    settings = get_settings(settings)
    points = plan.grid()
    workers = max(1, min(plan.get_workers() or settings.get_workers(), len(points) or 1))
    _logger.info("Running %d grid points with %d workers", len(points), workers)
    if workers == 1:
        return [run_point(l, beta, descriptor, plan, settings) for l, beta, descriptor in points]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda point: run_point(*point, plan, settings), points))

# endregion Grid points


# region Decay fits and trend studies

class DecayFit(NamedTuple):
    """Ordinary least-squares line through (l, log gap)."""

    slope: float
    intercept: float
    points: int

    def to_record(self) -> Dict[str, Any]:
        return {"slope": self.slope, "intercept": self.intercept, "points": self.points}


def fit_decay_rate(ls: Sequence[int], gaps: Sequence[float]) -> DecayFit:
    """Fits log gap = slope l + intercept.

    :param ls: The side lengths.
    :param gaps: The gaps, all positive.
    :return: The fit.
    :raise InsufficientDataError: With fewer than 3 points.
    """

    if len(ls) != len(gaps):
        raise ValueError("Got {} side lengths for {} gaps".format(len(ls), len(gaps)))
    if len(ls) < 3:
        raise InsufficientDataError("A decay fit needs at least 3 points, got {}".format(len(ls)))
    if any(not g > 0 for g in gaps):
        raise ValueError("Gaps must be positive to fit their logarithm, got {}".format(list(gaps)))
    slope, intercept = np.polyfit(np.asarray(ls, dtype=np.float64), np.log(np.asarray(gaps, dtype=np.float64)), 1)
    return DecayFit(float(slope), float(intercept), len(ls))


def _gap_series(l_values: Sequence[int], beta: float, descriptor: str, rates: str,
                settings: Optional[Settings]) -> Dict[str, Any]:
    """Helper function to get exact gaps of one boundary over side lengths, with a fit when possible.

    :param l_values: The side lengths.
    :param beta: The inverse temperature.
    :param descriptor: The boundary descriptor.
    :param rates: The rate family name.
    :param settings: The settings.
    :return: The entry: boundary, gaps (None where failed), errors, fit (None if declined).
    """

    gaps: List[Optional[float]] = []
    errors: Dict[str, str] = {}
    for l in l_values:
        box = build_box(l)
        try:
            gen = build_generator(box, parse_boundary_descriptor(descriptor, box), make_rates(rates, beta), settings)
            gaps.append(exact_gap(gen, witness=False).gap)
        except IsingGapError as e:
            _logger.error("Gap of %s at l=%d, beta=%s failed: %s", descriptor, l, beta, e)
            errors[str(l)] = "{}: {}".format(e.__class__.__name__, e)
            gaps.append(None)

    fitted = [(l, g) for l, g in zip(l_values, gaps) if g is not None and g > 0]
    fit = None
    if len(fitted) >= 3:
        fit = fit_decay_rate([l for l, _ in fitted], [g for _, g in fitted]).to_record()
    else:
        _logger.info("Decay fit for %s declined: %d usable points", descriptor, len(fitted))
    return {"boundary": descriptor, "gaps": gaps, "errors": errors, "fit": fit}


def boundary_trend(l_values: Sequence[int], beta: float, descriptors: Sequence[str], rates: str = "exponential",
                   settings: Optional[Settings] = None) -> Dict[str, Any]:
    """Compares gap-versus-l decay across boundary conditions.

    :param l_values: The side lengths.
    :param beta: The inverse temperature.
    :param descriptors: The boundary descriptors.
    :param rates: The rate family name.
    :param settings: The settings; read from the environment if None.
    :return: The report, with per-l gap ratios of each boundary to the first one.
    """

    entries = [_gap_series(l_values, beta, d, rates, settings) for d in descriptors]
    reference = entries[0]["gaps"] if entries else []
    for entry in entries[1:]:
        entry["ratio_to_first"] = [g / r if g is not None and r else None for g, r in zip(entry["gaps"], reference)]
    return {"kind": "boundary-trend", "beta": beta, "rates": rates, "l_values": list(l_values), "entries": entries}


def free_boundary_trend(l_values: Sequence[int], beta: float, rates: str = "exponential",
                        settings: Optional[Settings] = None) -> Dict[str, Any]:
    report = boundary_trend(l_values, beta, ("free", "plus"), rates, settings)
    report["kind"] = "free-boundary-trend"
    return report


def transition_study(l_values: Sequence[int], beta: float, delta_values: Sequence[float],
                     rates: str = "exponential", settings: Optional[Settings] = None) -> Dict[str, Any]:
    """Fits the gap decay rate in l for slab boundaries of several widths delta.

    :param l_values: The side lengths.
    :param beta: The inverse temperature.
    :param delta_values: The slab widths, each in (0, 1].
    :param rates: The rate family name.
    :param settings: The settings; read from the environment if None.
    :return: The report; entries carry raw gaps always and a fit when 3 or more gaps are available.
    """

    for delta in delta_values:
        if not 0.0 < delta <= 1.0:
            raise ValueError("Slab width must lie in (0, 1], got {}".format(delta))

    entries = []
    for delta in delta_values:
        entry = _gap_series(l_values, beta, "slab:{}".format(format_float(delta)), rates, settings)
        entry["delta"] = float(delta)
        entries.append(entry)

    slopes = [(e["delta"], abs(e["fit"]["slope"])) for e in entries if e["fit"] is not None]
    ordered = None
    if len(slopes) >= 2:
        slopes.sort()
        ordered = all(a[1] >= b[1] for a, b in zip(slopes, slopes[1:]))
    return {"kind": "transition", "beta": beta, "rates": rates, "l_values": list(l_values), "entries": entries,
            "decay_weakens_with_delta": ordered}

# endregion Decay fits and trend studies


# region Randomized lemma suites

def _random_field(box: Box, rng: np.random.Generator) -> CustomBoundary:
    values = rng.integers(-8, 9, size=4 * box.get_side()) / 8.0
    return CustomBoundary(box, values, descriptor="random")


def _tally(suite: Dict[str, int], passes: bool) -> None:
    suite["instances"] += 1
    if not passes:
        suite["violations"] += 1


def verify_lemmas(l_max: int, samples: int, seed: int = 0) -> Dict[str, Any]:
    """Runs the randomized energy-identity and energy-estimate suites and the counting bound.

    Boundary values are multiples of 1/8, so energies are exact in floating point.

    :param l_max: The largest side length drawn, l_max >= 2.
    :param samples: The number of random instances per suite.
    :param seed: The seed.
    :return: The JSON-able report with instance, skip and violation counts per suite.
    """

    if l_max < 2 or samples < 0:
        raise ValueError("Need l_max >= 2 and samples >= 0, got l_max={}, samples={}".format(l_max, samples))

    rng = make_rng(seed)
    suites = {name: {"instances": 0, "skipped": 0, "violations": 0} for name in LEMMA_SUITES}
    for k in range(samples):
        box = build_box(int(rng.integers(2, l_max + 1)))
        omega = _random_field(box, rng)
        epsilon = 1 if rng.random() < 0.5 else -1

        gamma, sigma = random_contour_instance(box, rng, epsilon)
        _tally(suites["energy-identity"],
               half_delta_identity(gamma, epsilon, omega, box) == delta_H([gamma], sigma, omega, box) / 2.0)

        for name, check in (("lemma31-a", lambda: check_lemma31([gamma], sigma, omega, box, "a")),
                            ("lemma32-a", lambda: check_lemma32(gamma, sigma, omega, box, "a"))):
            try:
                _tally(suites[name], all(report.passes for report in check()))
            except HypothesisError:
                suites[name]["skipped"] += 1

        small, small_sigma = random_contour_instance(box, rng, epsilon, max_size=max(1, box.get_side() - 2))
        try:
            _tally(suites["lemma32-b"], all(r.passes for r in check_lemma32(small, small_sigma, omega, box, "b")))
        except HypothesisError:
            suites["lemma32-b"]["skipped"] += 1

        if (k + 1) % 100 == 0:
            _logger.info("verify_lemmas: %d of %d instances", k + 1, samples)

    bond = dual_of(Bond.between(Site(0, 0), Site(1, 0)))
    counts = {}
    for m in COUNTING_LENGTHS:
        counts[str(m)] = count_contours_through(bond, m)
        _tally(suites["counting-bound"], counts[str(m)] <= counting_bound(m) and (m != 4 or counts[str(m)] == 2))
    for m in (3, 5):
        _tally(suites["counting-bound"], count_contours_through(bond, m) == 0)

    return {"kind": "verify-lemmas", "l_max": l_max, "samples": samples, "seed": seed, "suites": suites,
            "counts": counts, "passes": all(s["violations"] == 0 for s in suites.values())}

# endregion Randomized lemma suites


# region Output files

def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_records_csv(path: str, records: Sequence[Dict[str, Any]]) -> None:
    """Writes records as CSV under a versioned schema comment.

    :param path: The output path; parent directories are created.
    :param records: The records.
    """

    columns = list(RECORD_COLUMNS) + (["wall_time"] if any("wall_time" in r for r in records) else [])
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="") as handle:
        handle.write("# schema: {}\n".format(RECORD_SCHEMA))
        writer = csv.writer(handle)
        writer.writerow(columns)
        for record in records:
            writer.writerow([_csv_value(record.get(column)) for column in columns])
    _logger.info("Wrote %d records to %s", len(records), path)


def write_json(path: str, report: Any) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as handle:
        handle.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    _logger.info("Wrote report to %s", path)


def write_plan_outputs(plan: ExperimentPlan, records: Sequence[Dict[str, Any]]) -> None:
    if plan.get_csv():
        write_records_csv(plan.get_csv(), records)
    if plan.get_json():
        write_json(plan.get_json(), {"schema": RECORD_SCHEMA, "records": list(records)})

# endregion Output files


if __name__ == '__main__':
    pass
