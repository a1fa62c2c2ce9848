#!/usr/bin/env python3
"""
Event-driven continuous-time Glauber dynamics, and relaxation times from autocorrelations.

simulate() runs the exponential race over all sites: the waiting time is exponential with the
total rate, the flipping site is drawn proportionally to its rate, and only the rates of the
flipped site and its four neighbours are recomputed afterwards. Each replica draws from its own
Philox stream keyed by (seed, replica), so results do not depend on scheduling.

Usage:
    trajectory = simulate(box, omega, rates, sigma0, t_max=100.0, seed=7)
    times, values = observable_series(trajectory, make_observable("center_spin", box), dt=0.05, burn_in=10.0)
    estimate = estimate_relaxation(trajectories, "trap_indicator", burn_in=10.0, trap=trap)
"""

from concurrent.futures import ThreadPoolExecutor
import csv
import logging
import math
from more_itertools import chunked
import numpy as np
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from boundaries import BaseBoundary
from config import Settings, get_log_level, get_settings
from contours import TrapEvent, trap_indicator
from exceptions import GuardError, InsufficientDataError, NonExponentialFitError
from gibbs import MATERIALISE_SITE_LIMIT
from hamiltonian import spins_of_states, to_spins
from lattice import Box
from rates import BaseRates
from utils import format_float, make_rng

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# Configurations are packed into int64 event masks
MAX_SIMULATION_SITES = 62

# Random numbers are drawn in batches of this size
_DRAW_BATCH = 4096

# Autocorrelation window used for the exponential fit
DEFAULT_FIT_WINDOW = (0.05, 0.6)
DEFAULT_MIN_R_SQUARED = 0.9
DEFAULT_BOOTSTRAP = 200

# Post-burn-in duration required, in units of the larger of the fitted and integrated times
_MIN_DURATION_IN_TAU = 50.0

# Default number of grid points per trajectory when no sampling step is given
_DEFAULT_SAMPLES = 20000

Observable = Callable[[np.ndarray], np.ndarray]

OBSERVABLES = ("center_spin", "magnetization", "trap_indicator")


class Trajectory(object):
    """
    Trajectory class for one realisation of the dynamics on [0, t_max].

    Attributes
        _BOX        The box.
        _INITIAL    The configuration at time 0.
        _TIMES      The strictly increasing flip times.
        _SITES      The canonical index of the site flipped at each time.
        _T_MAX      The simulated horizon.
        _SEED       The seed of the random stream.
        _REPLICA    The replica index of the random stream.
    """

    # region Constructors

    def __init__(self, box: Box, initial: int, times: np.ndarray, sites: np.ndarray, t_max: float, seed: int,
                 replica: int = 0) -> None:
        """Initialisation of Trajectory class.

        :param box: The box.
        :param initial: The configuration at time 0.
        :param times: The flip times.
        :param sites: The flipped sites, as canonical indices.
        :param t_max: The simulated horizon.
        :param seed: The seed.
        :param replica: The replica index.
        """

        # Sanity check
        times = np.asarray(times, dtype=np.float64)
        if times.shape != np.shape(sites):
            raise ValueError("Got {} event times for {} flipped sites".format(times.shape[0], np.shape(sites)[0]))
        if np.any(np.diff(times) <= 0.0):
            _logger.error("Trajectory event times are not strictly increasing")
            raise ValueError("Event times must be strictly increasing")

        self._BOX = box
        self._INITIAL = int(initial)
        self._TIMES = times
        self._SITES = np.asarray(sites, dtype=np.int64)
        self._T_MAX = float(t_max)
        self._SEED = int(seed)
        self._REPLICA = int(replica)
        self._STATES = None

    def __repr__(self) -> str:
        """Overriden __repr__ of Trajectory class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": l={}, events={}, t_max={}, seed={}, replica={}" \
            .format(self._BOX.get_side(), self.get_event_count(), self._T_MAX, self._SEED, self._REPLICA)

    def __eq__(self, other: "Trajectory") -> bool:
        """Overriden __eq__ of Trajectory class.

        Two trajectories are equal if they have the same start and the same event log.

        :param other: The other instance of the Trajectory class.
        :return: Whether the two instances are equal.
        """

        return isinstance(other, Trajectory) and self._BOX == other._BOX and self._INITIAL == other._INITIAL \
            and self._T_MAX == other._T_MAX and np.array_equal(self._TIMES, other._TIMES) \
            and np.array_equal(self._SITES, other._SITES)

    # endregion Constructors

    # region Getter methods

    def get_box(self) -> Box:
        return self._BOX

    def get_initial(self) -> int:
        return self._INITIAL

    def get_times(self) -> np.ndarray:
        return self._TIMES

    def get_sites(self) -> np.ndarray:
        return self._SITES

    def get_t_max(self) -> float:
        return self._T_MAX

    def get_seed(self) -> int:
        return self._SEED

    def get_replica(self) -> int:
        return self._REPLICA

    def get_event_count(self) -> int:
        return int(self._TIMES.shape[0])

    # endregion Getter methods

    def states(self) -> np.ndarray:
        """Gets the configuration right after each event.

        :return: The configurations, one per event.
        """

        if self._STATES is None:
            masks = np.left_shift(np.int64(1), self._SITES)
            self._STATES = np.bitwise_xor.accumulate(masks) ^ np.int64(self._INITIAL) if masks.size \
                else np.empty(0, dtype=np.int64)
        return self._STATES

    def states_at(self, times: np.ndarray) -> np.ndarray:
        """Gets the configuration at each of a set of times in [0, t_max].

        :param times: The times.
        :return: The configurations.
        """

        index = np.searchsorted(self._TIMES, np.asarray(times, dtype=np.float64), side="right") - 1
        after = self.states()
        return np.where(index < 0, np.int64(self._INITIAL), after[np.maximum(index, 0)] if after.size
                        else np.int64(self._INITIAL))

    def state_at(self, t: float) -> int:
        return int(self.states_at(np.array([t]))[0])

    def flip_counts(self) -> np.ndarray:
        return np.bincount(self._SITES, minlength=self._BOX.get_size())


# region Simulation

def _site_rate(rates: BaseRates, spins: np.ndarray, fields: np.ndarray, neighbours: Sequence[Tuple[int, ...]],
               i: int) -> float:
    local = float(sum(spins[j] for j in neighbours[i])) + float(fields[i])
    return rates.rate(2.0 * spins[i] * local)


def simulate(box: Box, omega: BaseBoundary, rates: BaseRates, sigma0: int, t_max: float, seed: int,
             replica: int = 0) -> Trajectory:
    """Simulates the dynamics from sigma0 up to time t_max.

    :param box: The box.
    :param omega: The boundary field.
    :param rates: The rate family.
    :param sigma0: The initial configuration.
    :param t_max: The horizon, t_max > 0.
    :param seed: The seed.
    :param replica: The replica index, selecting an independent random stream.
    :return: The trajectory.
    """

    # Sanity check
    if not t_max > 0:
        raise ValueError("Simulation horizon must be positive, got {}".format(t_max))
    if box.get_size() > MAX_SIMULATION_SITES:
        _logger.error("simulate refused %s: more than %d sites", box, MAX_SIMULATION_SITES)
        raise GuardError("Simulation packs configurations into {} bits, {} has {} sites"
                         .format(MAX_SIMULATION_SITES, box, box.get_size()))
    if omega.get_box() != box:
        raise ValueError("Boundary lives on {}, not on {}".format(omega.get_box(), box))

    rng = make_rng(seed, replica)
    n = box.get_size()
    spins = to_spins(sigma0, box).astype(np.int64)
    fields = omega.get_site_fields()
    neighbours = [box.get_neighbour_indices(i) for i in range(n)]
    site_rates = np.array([_site_rate(rates, spins, fields, neighbours, i) for i in range(n)])

    times: List[float] = []
    sites: List[int] = []
    t = 0.0
    waits = races = np.empty(0)
    cursor = 0
    while True:
        if cursor == waits.shape[0]:
            waits = rng.standard_exponential(_DRAW_BATCH)
            races = rng.random(_DRAW_BATCH)
            cursor = 0
        total = float(site_rates.sum())
        t += waits[cursor] / total
        if t > t_max:
            break
        cumulative = np.cumsum(site_rates)
        i = min(int(np.searchsorted(cumulative, races[cursor] * cumulative[-1], side="right")), n - 1)
        cursor += 1

        spins[i] = -spins[i]
        times.append(t)
        sites.append(i)
        for j in (i,) + tuple(neighbours[i]):
            site_rates[j] = _site_rate(rates, spins, fields, neighbours, j)

    _logger.debug("simulate(l=%d, seed=%d, replica=%d): %d events up to t=%s",
                  box.get_side(), seed, replica, len(times), t_max)
    return Trajectory(box, sigma0, np.array(times), np.array(sites, dtype=np.int64), t_max, seed, replica)


def simulate_replicas(box: Box, omega: BaseBoundary, rates: BaseRates, sigma0: int, t_max: float, seed: int,
                      replicas: int, settings: Optional[Settings] = None) -> List[Trajectory]:
    """Simulates independent replicas concurrently, replica r on stream (seed, r).

    :param box: The box.
    :param omega: The boundary field.
    :param rates: The rate family.
    :param sigma0: The initial configuration of every replica.
    :param t_max: The horizon.
    :param seed: The seed.
    :param replicas: The number of replicas.
    :param settings: The settings providing the worker count; read from the environment if None.
    :return: The trajectories, in replica order.
    """

    if replicas < 1:
        raise ValueError("Need at least one replica, got {}".format(replicas))
    workers = min(get_settings(settings).get_workers(), replicas)
    _logger.info("Simulating %d replicas on %s up to t=%s with %d workers", replicas, box, t_max, workers)
    if workers == 1:
        return [simulate(box, omega, rates, sigma0, t_max, seed, r) for r in range(replicas)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda r: simulate(box, omega, rates, sigma0, t_max, seed, r), range(replicas)))

# endregion Simulation


# region Observables

def center_spin(box: Box) -> Observable:
    origin = box.get_origin_index()
    return lambda states: (2 * ((np.asarray(states, dtype=np.int64) >> origin) & 1) - 1).astype(np.float64)


def magnetization(box: Box) -> Observable:
    return lambda states: spins_of_states(states, box.get_size()).mean(axis=1, dtype=np.float64)


def trap_observable(box: Box, trap: TrapEvent) -> Observable:
    """Builds the indicator of the trap event as an observable.

    Up to 16 sites the tabulated indicator is used; above that each distinct configuration is
    tested once.

    :param box: The box.
    :param trap: The trap event.
    :return: The observable, 1.0 on the event and 0.0 off it.
    """

    if box.get_size() <= MATERIALISE_SITE_LIMIT:
        table = trap_indicator(box, trap.get_epsilon(), trap.get_delta_1())
        return lambda states: table[np.asarray(states, dtype=np.int64)].astype(np.float64)

    def _indicator(states: np.ndarray) -> np.ndarray:
        distinct, inverse = np.unique(np.asarray(states, dtype=np.int64), return_inverse=True)
        values = np.fromiter((trap.contains(int(s)) for s in distinct), dtype=np.float64, count=distinct.shape[0])
        return values[inverse]

    return _indicator


def make_observable(name: str, box: Box, trap: Optional[TrapEvent] = None) -> Observable:
    """Builds a named observable.

    :param name: One of OBSERVABLES.
    :param box: The box.
    :param trap: The trap event, required for "trap_indicator".
    :return: The observable, mapping an array of configurations to values.
    """

    if name == "center_spin":
        return center_spin(box)
    if name == "magnetization":
        return magnetization(box)
    if name == "trap_indicator":
        if trap is None:
            raise ValueError("The trap_indicator observable needs a trap event")
        return trap_observable(box, trap)
    raise ValueError("Unknown observable '{}', expected one of {}".format(name, ", ".join(OBSERVABLES)))


def observable_series(trajectory: Trajectory, observable: Observable, dt: float, burn_in: float = 0.0) \
        -> Tuple[np.ndarray, np.ndarray]:
    """Samples an observable along a trajectory on the grid burn_in, burn_in + dt, ... <= t_max.

    :param trajectory: The trajectory.
    :param observable: The observable.
    :param dt: The grid step, dt > 0.
    :param burn_in: The first grid time.
    :return: (times, values).
    """

    if not dt > 0:
        raise ValueError("Sampling step must be positive, got {}".format(dt))
    if not 0.0 <= burn_in < trajectory.get_t_max():
        raise ValueError("Burn-in {} must lie in [0, t_max={})".format(burn_in, trajectory.get_t_max()))
    count = int(math.floor((trajectory.get_t_max() - burn_in) / dt)) + 1
    times = burn_in + dt * np.arange(count, dtype=np.float64)
    return times, observable(trajectory.states_at(times))


def empirical_distribution(trajectory: Trajectory, box: Optional[Box] = None, burn_in: float = 0.0) -> np.ndarray:
    """Gets the fraction of time spent in every configuration after burn_in.

    :param trajectory: The trajectory.
    :param box: The box; defaults to the trajectory's.
    :param burn_in: Time discarded at the start.
    :return: The occupation measure indexed by configuration, summing to 1.
    """

    box = box or trajectory.get_box()
    if box.get_size() > MATERIALISE_SITE_LIMIT:
        raise GuardError("Occupation measures are tabulated only up to {} sites".format(MATERIALISE_SITE_LIMIT))
    if not 0.0 <= burn_in < trajectory.get_t_max():
        raise ValueError("Burn-in {} must lie in [0, t_max={})".format(burn_in, trajectory.get_t_max()))

    times = trajectory.get_times()
    later = times > burn_in
    starts = np.concatenate(([burn_in], times[later]))
    ends = np.concatenate((times[later], [trajectory.get_t_max()]))
    states = np.concatenate(([trajectory.state_at(burn_in)], trajectory.states()[later]))
    occupation = np.bincount(states, weights=ends - starts, minlength=1 << box.get_size())
    return occupation / occupation.sum()

# endregion Observables


# region Relaxation estimate

class RelaxationEstimate(NamedTuple):
    """
    RelaxationEstimate record for the exponential decay time of an observable's autocorrelation.

    Attributes
        tau         The relaxation time, -1 / slope of the log-autocorrelation.
        stderr      Bootstrap standard error of tau.
        observable  The observable name.
        r_squared   Goodness of the straight-line fit.
        lags        Number of lags in the fit window.
        units       Number of resampled units (replicas, or segments of a single trajectory).
        tau_int     Integrated autocorrelation time of the pooled series.
    """

    tau: float
    stderr: float
    observable: str
    r_squared: float
    lags: int
    units: int
    tau_int: Optional[float] = None

    def get_rate(self) -> float:
        return 1.0 / self.tau

    def to_record(self) -> Dict[str, Any]:
        return {"tau": self.tau, "stderr": self.stderr, "observable": self.observable,
                "r_squared": self.r_squared, "lags": self.lags, "units": self.units,
                "tau_int": self.tau_int}


def _autocovariance(values: np.ndarray) -> np.ndarray:
    """Helper function to get the sum over t of x(t) x(t + k) for every lag k, by zero-padded FFT.

    :param values: The centred series.
    :return: The lagged sums.
    """

    n = values.shape[0]
    size = 1 << int(math.ceil(math.log2(max(2 * n, 2))))
    spectrum = np.fft.rfft(values, n=size)
    return np.fft.irfft(spectrum * np.conjugate(spectrum), n=size)[:n]


def pooled_autocorrelation(series: Sequence[np.ndarray]) -> np.ndarray:
    """Gets the autocorrelation of equally spaced series pooled about their common mean.

    :param series: The series, same sampling step.
    :return: C(k) for k = 0 .. longest length - 1, with C(0) = 1.
    """

    mean = float(np.mean(np.concatenate(series)))
    length = max(s.shape[0] for s in series)
    sums = np.zeros(length)
    counts = np.zeros(length)
    for s in series:
        sums[:s.shape[0]] += _autocovariance(s - mean)
        counts[:s.shape[0]] += np.arange(s.shape[0], 0, -1)
    covariance = sums / np.maximum(counts, 1.0)
    if not covariance[0] > 0:
        raise InsufficientDataError("Observable is constant after burn-in")
    return covariance / covariance[0]


def integrated_time(correlation: np.ndarray, dt: float) -> float:
    """Gets the integrated autocorrelation time dt (1/2 + C(1) + ... + C(K - 1)).

    K is the first lag where the autocorrelation is no longer positive. For C(t) = exp(-t / tau)
    the result is tau up to discretisation.

    :param correlation: The autocorrelation, C(0) = 1.
    :param dt: The lag step.
    :return: The integrated time.
    :raise InsufficientDataError: If the autocorrelation stays positive over the whole sample.
    """

    cut = np.nonzero(correlation[1:] <= 0.0)[0]
    if cut.size == 0:
        raise InsufficientDataError("Autocorrelation stays positive over all {} lags; the sample is too short"
                                    .format(correlation.shape[0]))
    return float(dt * (0.5 + correlation[1:cut[0] + 1].sum()))


def _fit_decay(correlation: np.ndarray, dt: float, window: Tuple[float, float]) -> Tuple[float, float, int]:
    """Helper function to fit log C(k dt) to a line over the window.

    The fit uses the lags from 1 up to the first one where C drops to the window's lower end,
    keeping those with C at most the window's upper end.

    :param correlation: The autocorrelation.
    :param dt: The lag step.
    :param window: (lower, upper) correlation values bounding the fit.
    :return: (tau, r_squared, number of lags).
    """

    lower, upper = window
    below = np.nonzero(correlation[1:] <= lower)[0]
    if below.size == 0:
        raise InsufficientDataError("Autocorrelation never decays to {} within the sample".format(lower))
    lags = np.arange(1, below[0] + 1)
    lags = lags[correlation[lags] <= upper]
    if lags.size < 3:
        raise InsufficientDataError("Only {} lags fall in the fit window; use a smaller sampling step"
                                    .format(lags.size))

    x = lags * dt
    y = np.log(correlation[lags])
    slope, intercept = np.polyfit(x, y, 1)
    total = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - float(np.sum((y - (slope * x + intercept)) ** 2)) / total if total > 0 else 1.0
    if not slope < 0:
        raise NonExponentialFitError("Log-autocorrelation does not decrease (slope {})".format(slope))
    return -1.0 / float(slope), r_squared, int(lags.size)


def estimate_relaxation(trajectories: Sequence[Trajectory], observable: Union[str, Observable], burn_in: float,
                        dt: Optional[float] = None, trap: Optional[TrapEvent] = None,
                        window: Tuple[float, float] = DEFAULT_FIT_WINDOW,
                        min_r_squared: float = DEFAULT_MIN_R_SQUARED, bootstrap: int = DEFAULT_BOOTSTRAP,
                        seed: int = 0, name: Optional[str] = None) -> RelaxationEstimate:
    """Estimates the relaxation time of an observable from trajectories of the same dynamics.

    :param trajectories: The trajectories, all on the same box and horizon.
    :param observable: A name from OBSERVABLES, or an observable.
    :param burn_in: Time discarded at the start of each trajectory.
    :param dt: The sampling step; defaults to spreading 20000 samples over each trajectory.
    :param trap: The trap event, for the "trap_indicator" observable.
    :param window: (lower, upper) correlation values bounding the fit.
    :param min_r_squared: Smallest accepted goodness of fit.
    :param bootstrap: Number of bootstrap resamples.
    :param seed: The seed of the bootstrap stream.
    :param name: The name recorded for a callable observable.
    :return: The estimate.
    :raise InsufficientDataError: If the sample is too short or too coarse for the fit.
    :raise NonExponentialFitError: If the fit's R^2 is below min_r_squared.
    """

    if not trajectories:
        raise InsufficientDataError("No trajectories given")
    box = trajectories[0].get_box()
    if isinstance(observable, str):
        name = observable
        observable = make_observable(observable, box, trap)
    name = name or getattr(observable, "__name__", "observable")

    span = min(tr.get_t_max() for tr in trajectories) - burn_in
    if not span > 0:
        raise InsufficientDataError("Burn-in {} leaves nothing of the trajectories".format(burn_in))
    dt = dt or span / _DEFAULT_SAMPLES
    series = [observable_series(tr, observable, dt, burn_in)[1] for tr in trajectories]

    correlation = pooled_autocorrelation(series)
    tau, r_squared, lags = _fit_decay(correlation, dt, window)
    if r_squared < min_r_squared:
        _logger.error("Relaxation fit of %s has R^2=%.4f below %.4f", name, r_squared, min_r_squared)
        raise NonExponentialFitError("Autocorrelation of {} is not exponential: R^2={:.4f} < {}"
                                     .format(name, r_squared, min_r_squared))
    tau_int = integrated_time(correlation, dt)
    duration = span * len(trajectories)
    needed = _MIN_DURATION_IN_TAU * max(tau, tau_int)
    if duration < needed:
        _logger.error("Relaxation estimate of %s needs %s time units (tau=%s, tau_int=%s), got %s", name, needed,
                      tau, tau_int, duration)
        raise InsufficientDataError("Post-burn-in duration {} is below {} max(tau, tau_int) = {}"
                                    .format(duration, _MIN_DURATION_IN_TAU, needed))

    # A single trajectory is resampled by contiguous segments of at least 10 tau
    if len(series) == 1:
        segments = max(2, min(10, int(span // (10.0 * tau))))
        units = [np.asarray(part) for part in np.array_split(series[0], segments)]
    else:
        units = series

    rng = make_rng(seed, len(units))
    resampled = []
    for _ in range(bootstrap):
        picks = rng.integers(0, len(units), size=len(units))
        try:
            resampled.append(_fit_decay(pooled_autocorrelation([units[k] for k in picks]), dt, window)[0])
        except (InsufficientDataError, NonExponentialFitError):
            continue
    if len(resampled) < 2:
        raise InsufficientDataError("Bootstrap produced {} usable resamples".format(len(resampled)))
    stderr = float(np.std(resampled, ddof=1))
    if len(resampled) < bootstrap:
        _logger.warning("Relaxation bootstrap of %s kept %d of %d resamples", name, len(resampled), bootstrap)

    _logger.info("Relaxation of %s: tau=%.6g +- %.3g, tau_int=%.6g (R^2=%.4f, %d lags)", name, tau, stderr, tau_int,
                 r_squared, lags)
    return RelaxationEstimate(tau=tau, stderr=stderr, observable=name, r_squared=r_squared, lags=lags,
                              units=len(units), tau_int=tau_int)

# endregion Relaxation estimate


def write_samples_csv(path: str, trajectories: Sequence[Trajectory], observables: Dict[str, Observable],
                      dt: float, burn_in: float = 0.0, batch: int = 4096) -> int:
    """Streams thinned observable samples of trajectories to a CSV file.

    :param path: The output path.
    :param trajectories: The trajectories.
    :param observables: Column name to observable.
    :param dt: The sampling step.
    :param burn_in: The first sampling time.
    :param batch: Rows written per chunk.
    :return: The number of rows written.
    """

    names = list(observables)
    rows = 0
    with open(path, "w", newline="") as handle:
        handle.write("# schema: ising-gap-samples v1\n")
        writer = csv.writer(handle)
        writer.writerow(["replica", "time"] + names)
        for trajectory in trajectories:
            times, _ = observable_series(trajectory, lambda states: states, dt, burn_in)
            for chunk in chunked(times, batch):
                chunk = np.asarray(chunk)
                states = trajectory.states_at(chunk)
                columns = [observables[name](states) for name in names]
                for k, t in enumerate(chunk):
                    writer.writerow([trajectory.get_replica(), format_float(t)]
                                    + [format_float(column[k]) for column in columns])
                rows += chunk.shape[0]
    _logger.info("Wrote %d samples to %s", rows, path)
    return rows


if __name__ == '__main__':
    pass
