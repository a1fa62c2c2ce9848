#!/usr/bin/env python3
"""
Exact finite-volume Gibbs measures by enumeration of the configuration space.

Weights are kept in the log domain (log w = -beta H) and normalised with logsumexp, so large
beta neither overflows nor underflows. Up to 16 sites the log weights are materialised; up to
the enumeration guard (25 sites by default) they are recomputed block by block for each query.

Usage:
    table = build_gibbs(box, beta, omega)
    event_probability(table, lambda sigma: spin_at(sigma, origin) > 0)
    center_sign(table)
"""

import logging
import numpy as np
from scipy.special import logsumexp
from typing import Callable, Iterator, Optional, Tuple, Union

from boundaries import BaseBoundary
from config import Settings, get_log_level, get_settings
from exceptions import GuardError
from hamiltonian import Hamiltonian
from lattice import Box

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# Largest number of sites whose log weights are held in memory
MATERIALISE_SITE_LIMIT = 16

# |E[sigma_0]| below this counts as a tie, resolved to +
_TIE_TOLERANCE = 1e-12

Predicate = Union[Callable[[int], bool], Callable[[np.ndarray], np.ndarray], np.ndarray]


class GibbsTable(object):
    """
    GibbsTable class for the exact Gibbs measure mu = exp(-beta H) / Z on a small box.

    Attributes
        _HAMILTONIAN    The Hamiltonian (box and boundary field).
        _BETA           The inverse temperature.
        _LOG_WEIGHTS    The log weights -beta H(sigma) for every sigma, or None when streamed.
        _LOG_Z          The log partition function.
    """

    # region Constructors

    def __init__(self, hamiltonian: Hamiltonian, beta: float) -> None:
        """Initialisation of GibbsTable class.

        :param hamiltonian: The Hamiltonian.
        :param beta: The inverse temperature, beta >= 0.
        """

        self._HAMILTONIAN = hamiltonian
        self._BETA = float(beta)
        if hamiltonian.get_box().get_size() <= MATERIALISE_SITE_LIMIT:
            self._LOG_WEIGHTS = -self._BETA * hamiltonian.all_energies()
            self._LOG_Z = float(logsumexp(self._LOG_WEIGHTS))
        else:
            self._LOG_WEIGHTS = None
            partial = [float(logsumexp(log_weights)) for _, log_weights in self.iter_log_weights()]
            self._LOG_Z = float(logsumexp(partial))

    def __repr__(self) -> str:
        """Overriden __repr__ of GibbsTable class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": l={}, beta={}, omega={}, log_Z={}, materialised={}" \
            .format(self.get_box().get_side(), self._BETA, self.get_omega().get_descriptor(), self._LOG_Z,
                    self._LOG_WEIGHTS is not None)

    def __str__(self) -> str:
        return "Gibbs table on {} at beta={} with boundary '{}'" \
            .format(self.get_box(), self._BETA, self.get_omega().get_descriptor())

    # endregion Constructors

    # region Getter methods

    def get_hamiltonian(self) -> Hamiltonian:
        return self._HAMILTONIAN

    def get_box(self) -> Box:
        return self._HAMILTONIAN.get_box()

    def get_omega(self) -> BaseBoundary:
        return self._HAMILTONIAN.get_omega()

    def get_beta(self) -> float:
        return self._BETA

    def get_log_z(self) -> float:
        return self._LOG_Z

    def get_dimension(self) -> int:
        return self._HAMILTONIAN.get_dimension()

    def is_materialised(self) -> bool:
        return self._LOG_WEIGHTS is not None

    def get_log_weights(self) -> np.ndarray:
        """Gets the unnormalised log weights of every configuration.

        :return: The log weights, indexed by configuration.
        """

        if self._LOG_WEIGHTS is None:
            _logger.error("GibbsTable log weights requested for %s, above the in-memory limit", self.get_box())
            raise GuardError("Log weights are only held in memory up to {} sites".format(MATERIALISE_SITE_LIMIT))
        return self._LOG_WEIGHTS

    # endregion Getter methods

    def iter_log_weights(self) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
        """Generates (states, log weights) in consecutive blocks of the configuration space.

        :return: The blocks.
        """

        if self._LOG_WEIGHTS is not None:
            yield np.arange(self.get_dimension(), dtype=np.int64), self._LOG_WEIGHTS
            return
        for states, energies in self._HAMILTONIAN.iter_energies():
            yield states, -self._BETA * energies

    def probabilities(self) -> np.ndarray:
        """Gets the normalised Gibbs probabilities of every configuration.

        :return: The probabilities, summing to 1.
        """

        return np.exp(self.get_log_weights() - self._LOG_Z)

    def log_probability(self, sigma: int) -> float:
        energy = self._HAMILTONIAN.energy(sigma)
        return -self._BETA * energy - self._LOG_Z


def build_gibbs(box: Box, beta: float, omega: BaseBoundary, settings: Optional[Settings] = None) -> GibbsTable:
    """Builds the exact Gibbs table by enumerating all 2^(l^2) configurations.

    :param box: The box.
    :param beta: The inverse temperature, beta >= 0.
    :param omega: The boundary field.
    :param settings: The settings; read from the environment if None.
    :return: The Gibbs table.
    """

    limit = get_settings(settings).get_enumeration_limit()
    if box.get_size() > limit:
        _logger.error("build_gibbs refused %s: %d sites over the enumeration guard %d", box, box.get_size(), limit)
        raise GuardError("Gibbs enumeration of {} needs l^2 <= {}".format(box, limit))
    if not np.isfinite(beta) or beta < 0:
        raise ValueError("Inverse temperature must be a finite non-negative number, got {}".format(beta))

    if box.get_size() > MATERIALISE_SITE_LIMIT:
        _logger.info("Streaming Gibbs enumeration of %s (%d configurations)", box, 1 << box.get_size())
    return GibbsTable(Hamiltonian(box, omega), beta)


def _event_mask(predicate: Predicate, states: np.ndarray, vectorized: bool) -> np.ndarray:
    """Helper function to evaluate a predicate on a block of configurations.

    :param predicate: A boolean mask over the whole space, or a callable.
    :param states: The configurations of the block.
    :param vectorized: Whether a callable predicate takes and returns arrays.
    :return: The boolean mask of the block.
    """

    if isinstance(predicate, np.ndarray):
        return predicate[states].astype(bool)
    if vectorized:
        return np.asarray(predicate(states), dtype=bool)
    return np.fromiter((bool(predicate(int(s))) for s in states), dtype=bool, count=states.shape[0])


def event_mask(table: GibbsTable, predicate: Predicate, vectorized: bool = False) -> np.ndarray:
    """Gets the boolean mask of an event over the whole configuration space.

    :param table: The Gibbs table.
    :param predicate: A boolean mask indexed by configuration, or a callable on configurations.
    :param vectorized: Whether a callable predicate takes an array of configurations.
    :return: The mask, indexed by configuration.
    """

    if isinstance(predicate, np.ndarray):
        if predicate.shape != (table.get_dimension(),):
            raise ValueError("Event mask has shape {}, expected ({},)".format(predicate.shape, table.get_dimension()))
        return predicate.astype(bool)
    return np.concatenate([_event_mask(predicate, states, vectorized)
                           for states in table.get_hamiltonian().iter_blocks()])


def log_event_probability(table: GibbsTable, predicate: Predicate, vectorized: bool = False) -> float:
    """Gets log mu(A) for the event A described by a predicate.

    :param table: The Gibbs table.
    :param predicate: A boolean mask indexed by configuration, or a callable on configurations.
    :param vectorized: Whether a callable predicate takes an array of configurations.
    :return: log mu(A); -inf for the empty event.
    """

    partial = []
    for states, log_weights in table.iter_log_weights():
        mask = _event_mask(predicate, states, vectorized)
        if mask.any():
            partial.append(float(logsumexp(log_weights[mask])))
    if not partial:
        return -np.inf
    return min(0.0, float(logsumexp(partial)) - table.get_log_z())


def event_probability(table: GibbsTable, predicate: Predicate, vectorized: bool = False) -> float:
    """Gets mu(A) for the event A described by a predicate.

    :param table: The Gibbs table.
    :param predicate: A boolean mask indexed by configuration, or a callable on configurations.
    :param vectorized: Whether a callable predicate takes an array of configurations.
    :return: The probability in [0, 1].
    """

    return float(np.exp(log_event_probability(table, predicate, vectorized)))


def expectation(table: GibbsTable, f: Union[Callable, np.ndarray], vectorized: bool = False) -> float:
    """Gets E_mu[f].

    :param table: The Gibbs table.
    :param f: Values indexed by configuration, or a callable on configurations.
    :param vectorized: Whether a callable f takes an array of configurations.
    :return: The expectation.
    """

    total = 0.0
    for states, log_weights in table.iter_log_weights():
        if isinstance(f, np.ndarray):
            values = f[states]
        elif vectorized:
            values = np.asarray(f(states), dtype=float)
        else:
            values = np.fromiter((float(f(int(s))) for s in states), dtype=float, count=states.shape[0])
        total += float(np.dot(np.exp(log_weights - table.get_log_z()), values))
    return total


def center_magnetization(table: GibbsTable) -> float:
    """Gets E_mu[sigma_0] at the origin.

    :param table: The Gibbs table.
    :return: The center magnetization in [-1, 1].
    """

    origin = table.get_box().get_origin_index()
    return expectation(table, lambda states: 2.0 * ((states >> origin) & 1) - 1.0, vectorized=True)


def center_sign(table: GibbsTable) -> int:
    """Gets the sign epsilon = + if E_mu[sigma_0] >= 0, else -.

    :param table: The Gibbs table.
    :return: +1 or -1; exact ties (within rounding) go to +1.
    """

    return 1 if center_magnetization(table) >= -_TIE_TOLERANCE else -1


def mean_energy(table: GibbsTable) -> float:
    total = 0.0
    for states, log_weights in table.iter_log_weights():
        energies = -log_weights / table.get_beta() if table.get_beta() > 0 \
            else table.get_hamiltonian().energies(states)
        total += float(np.dot(np.exp(log_weights - table.get_log_z()), energies))
    return total


if __name__ == '__main__':
    pass
