#!/usr/bin/env python3
"""
The Glauber generator A on the configuration space of a box, and its spectral gap.

(A f)(sigma) = sum_x q(x, sigma, omega) (f(sigma^x) - f(sigma)). Detailed balance makes A
self-adjoint in L2(mu), so the gap is read off the symmetrised operator
S = D^(1/2) (-A) D^(-1/2), D = diag(mu), whose off-diagonal entries are
-sqrt(q(dH) q(-dH)) and whose kernel is spanned by sqrt(mu).

Small spaces (dimension up to the dense limit) are diagonalised densely. Larger ones use
LOBPCG with a Jacobi preconditioner, deflated against sqrt(mu), falling back to Lanczos on the
deflated operator; matrix-vector products never store S densely.

Usage:
    gen = build_generator(box, omega, make_rates("exponential", beta))
    result = exact_gap(gen)
    indicator_upper_bound(gen, trap_indicator(box, epsilon, delta_1))
    schonmann_lower_bound(l, beta, rates.q_lower())
"""

import logging
import math
import numpy as np
from scipy import sparse
from scipy.linalg import eigh, eigvals, eigvalsh, expm
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, LinearOperator, eigsh, lobpcg
from scipy.special import logsumexp
from typing import Any, Dict, Iterator, NamedTuple, Optional, Tuple
import warnings

from boundaries import BaseBoundary
from config import Settings, get_log_level, get_settings
from exceptions import ConvergenceError, GuardError
from gibbs import GibbsTable, Predicate, build_gibbs, event_mask, log_event_probability
from lattice import Box
from rates import BaseRates
from utils import make_rng

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# Largest dimension whose rate tables (and sparse matrices) are held in memory
MATERIALISE_DIMENSION = 2 ** 16

# Accepted residual ||S v - gap v|| / max_sigma d(sigma) for a unit vector v
RESIDUAL_TOLERANCE = 1e-8

# A dense gap must sit this many rounding units above the computed kernel
_KERNEL_SEPARATION = 10.0

# Dense gaps within this many rounding units of the kernel are logged as imprecise
_PRECISION_WARNING = 1e6

# mu(Gamma) mu(Gamma^c) below this makes an event trivial
_DEGENERATE_EVENT = 1e-300

_CONSTANT_TOLERANCE = 1e-14
_LOBPCG_BLOCK = 3
_LOBPCG_MAXITER = 500
_LANCZOS_MAXITER = 20000

Block = Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]


class GeneratorOperator(object):
    """
    GeneratorOperator class for the Glauber generator of a rate family on a Gibbs table.

    Attributes
        _TABLE          The Gibbs table providing mu.
        _RATES          The rate family.
        _SETTINGS       The size guards.
        _BITS           The single-site flip masks 1 << x.
        _DIAGONAL       d(sigma) = sum_x q(x, sigma), the diagonal of -A and S.
        _SQRT_MU        sqrt(mu(sigma)), the unit kernel vector of S.
        _NEIGHBOURS     sigma ^ (1 << x) for every sigma and x, or None when streamed.
        _FORWARD        q(x, sigma) for every sigma and x, or None when streamed.
        _COUPLING       sqrt(q(x, sigma) q(x, sigma^x)) for every sigma and x, or None when streamed.
    """

    # region Constructors

    def __init__(self, table: GibbsTable, rates: BaseRates, settings: Optional[Settings] = None) -> None:
        """Initialisation of GeneratorOperator class.

        :param table: The Gibbs table of the box, boundary and inverse temperature.
        :param rates: The rate family, at the same inverse temperature as the table.
        :param settings: The settings; read from the environment if None.
        """

        # Sanity check
        if rates.get_beta() != table.get_beta():
            _logger.error("GeneratorOperator given rates at beta=%s for a table at beta=%s",
                          rates.get_beta(), table.get_beta())
            raise ValueError("Rates at beta={} do not match the Gibbs table at beta={}"
                             .format(rates.get_beta(), table.get_beta()))

        self._TABLE = table
        self._RATES = rates
        self._SETTINGS = get_settings(settings)
        self._BITS = np.left_shift(np.int64(1), np.arange(table.get_box().get_size(), dtype=np.int64))
        self._NEIGHBOURS = self._FORWARD = self._COUPLING = None

        if self.get_dimension() <= MATERIALISE_DIMENSION:
            states = np.arange(self.get_dimension(), dtype=np.int64)
            self._NEIGHBOURS = states[:, None] ^ self._BITS[None, :]
            self._FORWARD, self._COUPLING = self._rate_block(states)
            self._DIAGONAL = self._FORWARD.sum(axis=1)
        else:
            _logger.info("Streaming generator rates over %d configurations", self.get_dimension())
            self._DIAGONAL = np.empty(self.get_dimension(), dtype=np.float64)
            for states, _, forward, _ in self._iter_blocks():
                self._DIAGONAL[states] = forward.sum(axis=1)

        self._SQRT_MU = np.empty(self.get_dimension(), dtype=np.float64)
        for states, log_weights in table.iter_log_weights():
            self._SQRT_MU[states] = np.exp(0.5 * (log_weights - table.get_log_z()))

    def __repr__(self) -> str:
        """Overriden __repr__ of GeneratorOperator class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": l={}, beta={}, omega={}, rates={}, dimension={}" \
            .format(self.get_box().get_side(), self.get_beta(), self.get_omega().get_descriptor(),
                    self._RATES.get_kind(), self.get_dimension())

    def __str__(self) -> str:
        return "Generator of {} on {} with boundary '{}'" \
            .format(self._RATES, self.get_box(), self.get_omega().get_descriptor())

    # endregion Constructors

    # region Getter methods

    def get_gibbs(self) -> GibbsTable:
        return self._TABLE

    def get_rates(self) -> BaseRates:
        return self._RATES

    def get_settings(self) -> Settings:
        return self._SETTINGS

    def get_box(self) -> Box:
        return self._TABLE.get_box()

    def get_omega(self) -> BaseBoundary:
        return self._TABLE.get_omega()

    def get_beta(self) -> float:
        return self._TABLE.get_beta()

    def get_dimension(self) -> int:
        return self._TABLE.get_dimension()

    def get_flip_masks(self) -> np.ndarray:
        return self._BITS

    def get_diagonal(self) -> np.ndarray:
        return self._DIAGONAL

    def get_scale(self) -> float:
        return float(self._DIAGONAL.max())

    def get_sqrt_stationary(self) -> np.ndarray:
        return self._SQRT_MU

    def get_stationary(self) -> np.ndarray:
        return self._SQRT_MU ** 2

    def is_materialised(self) -> bool:
        return self._FORWARD is not None

    # endregion Getter methods

    # region Rate tables

    def _rate_block(self, states: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Helper function to get the forward rates and symmetric couplings of a block of states.

        :param states: The configurations.
        :return: (q(x, sigma), sqrt(q(x, sigma) q(x, sigma^x))), each of shape (len(states), n).
        """

        delta = self._TABLE.get_hamiltonian().delta_flips(states)
        forward = self._RATES.rates(delta)
        # Delta H of the reverse flip is -Delta H
        coupling = np.sqrt(forward * self._RATES.rates(-delta))
        return forward, coupling

    def _iter_blocks(self) -> Iterator[Block]:
        """Helper function to generate (states, neighbours, forward rates, couplings) block by block.

        :return: The blocks.
        """

        if self._FORWARD is not None:
            yield np.arange(self.get_dimension(), dtype=np.int64), self._NEIGHBOURS, self._FORWARD, self._COUPLING
            return
        for states in self._TABLE.get_hamiltonian().iter_blocks():
            forward, coupling = self._rate_block(states)
            yield states, states[:, None] ^ self._BITS[None, :], forward, coupling

    # endregion Rate tables

    # region Operator actions

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Applies the symmetrised operator S to a vector or to the columns of a matrix.

        :param v: Array of shape (dimension,) or (dimension, k).
        :return: S v, of the same shape.
        """

        v = np.asarray(v, dtype=np.float64)
        out = np.empty_like(v)
        for states, neighbours, _, coupling in self._iter_blocks():
            if v.ndim == 1:
                out[states] = self._DIAGONAL[states] * v[states] - np.einsum("ij,ij->i", coupling, v[neighbours])
            else:
                out[states] = self._DIAGONAL[states, None] * v[states] \
                    - np.einsum("ij,ijk->ik", coupling, v[neighbours])
        return out

    def apply_generator(self, f: np.ndarray) -> np.ndarray:
        """Applies A itself: (A f)(sigma) = sum_x q(x, sigma) (f(sigma^x) - f(sigma)).

        :param f: Values indexed by configuration.
        :return: A f.
        """

        f = np.asarray(f, dtype=np.float64)
        out = np.empty_like(f)
        for states, neighbours, forward, _ in self._iter_blocks():
            out[states] = np.einsum("ij,ij->i", forward, f[neighbours] - f[states, None])
        return out

    def dirichlet_form(self, f: np.ndarray) -> float:
        """Gets -mu(f A f) = 1/2 sum_sigma sum_x mu(sigma) q(x, sigma) (f(sigma^x) - f(sigma))^2.

        :param f: Values indexed by configuration.
        :return: The Dirichlet form, non-negative.
        """

        f = np.asarray(f, dtype=np.float64)
        total = 0.0
        for states, neighbours, forward, _ in self._iter_blocks():
            jumps = (f[neighbours] - f[states, None]) ** 2
            total += 0.5 * float(np.dot(self._SQRT_MU[states] ** 2, np.einsum("ij,ij->i", forward, jumps)))
        return total

    def as_linear_operator(self) -> LinearOperator:
        dimension = self.get_dimension()
        return LinearOperator((dimension, dimension), matvec=self.apply, matmat=self.apply, rmatvec=self.apply,
                              dtype=np.float64)

    # endregion Operator actions

    # region Matrices

    def _require_materialised(self, what: str) -> None:
        if self._FORWARD is None:
            _logger.error("%s requested for dimension %d", what, self.get_dimension())
            raise GuardError("{} is only built up to dimension {}".format(what, MATERIALISE_DIMENSION))

    def require_dense(self, what: str) -> None:
        limit = self._SETTINGS.get_dense_limit()
        if self.get_dimension() > limit:
            _logger.error("%s refused: dimension %d over the dense limit %d", what, self.get_dimension(), limit)
            raise GuardError("{} needs dimension <= {}, got {}".format(what, limit, self.get_dimension()))

    def sparse_symmetrized(self) -> sparse.csr_matrix:
        """Gets S as a sparse matrix.

        :return: The symmetric matrix S.
        """

        self._require_materialised("The sparse symmetrised operator")
        rows = np.repeat(np.arange(self.get_dimension(), dtype=np.int64), self._BITS.shape[0])
        off = sparse.csr_matrix((-self._COUPLING.ravel(), (rows, self._NEIGHBOURS.ravel())),
                                shape=(self.get_dimension(), self.get_dimension()))
        return (off + sparse.diags(self._DIAGONAL)).tocsr()

    def sparse_generator(self) -> sparse.csr_matrix:
        """Gets A as a sparse matrix, rows indexed by the current configuration.

        :return: The generator matrix, with zero row sums.
        """

        self._require_materialised("The sparse generator")
        rows = np.repeat(np.arange(self.get_dimension(), dtype=np.int64), self._BITS.shape[0])
        off = sparse.csr_matrix((self._FORWARD.ravel(), (rows, self._NEIGHBOURS.ravel())),
                                shape=(self.get_dimension(), self.get_dimension()))
        return (off - sparse.diags(self._DIAGONAL)).tocsr()

    def dense_symmetrized(self) -> np.ndarray:
        self.require_dense("The dense symmetrised operator")
        return self.sparse_symmetrized().toarray()

    # endregion Matrices


class GapResult(NamedTuple):
    """
    GapResult record for one spectral-gap computation.

    Attributes
        gap         The smallest positive eigenvalue of -A.
        kernel      The computed bottom eigenvalue, zero up to rounding (None when deflated away).
        method      "dense_eig" or "iterative_eig".
        residual    ||S v - gap v|| / max d for the unit eigenvector v of S.
        witness     The gap eigenfunction of -A, normalised in L2(mu), or None.
    """

    l: int
    beta: float
    boundary_descriptor: str
    rates: str
    gap: float
    kernel: Optional[float]
    method: str
    residual: float
    witness: Optional[np.ndarray] = None

    def to_record(self) -> Dict[str, Any]:
        return {
            "l": self.l,
            "beta": self.beta,
            "boundary_descriptor": self.boundary_descriptor,
            "rates": self.rates,
            "gap": self.gap,
            "method": self.method,
            "residual": self.residual,
        }


def build_generator(box: Box, omega: BaseBoundary, rates: BaseRates, settings: Optional[Settings] = None) \
        -> GeneratorOperator:
    """Builds the generator of a rate family on a box with a boundary field.

    :param box: The box.
    :param omega: The boundary field.
    :param rates: The rate family; its inverse temperature is the one of the Gibbs measure.
    :param settings: The settings; read from the environment if None.
    :return: The generator.
    """

    settings = get_settings(settings)
    dimension = 1 << box.get_size()
    if dimension > settings.get_iterative_limit():
        _logger.error("build_generator refused %s: dimension %d over the iterative limit %d",
                      box, dimension, settings.get_iterative_limit())
        raise GuardError("Generators are built only up to dimension {}, {} has {}"
                         .format(settings.get_iterative_limit(), box, dimension))

    table = build_gibbs(box, rates.get_beta(), omega, settings)
    return GeneratorOperator(table, rates, settings)


# region Gap computation

def _residual(gen: GeneratorOperator, v: np.ndarray, value: float) -> float:
    return float(np.linalg.norm(gen.apply(v) - value * v) / np.linalg.norm(v) / gen.get_scale())


def _dense_lowest(gen: GeneratorOperator) -> Tuple[float, float, np.ndarray, float]:
    """Helper function to get the two lowest eigenpairs of S densely.

    The rounding level is machine epsilon times the infinity norm of S, the absolute accuracy of
    the computed eigenvalues.

    :param gen: The generator.
    :return: (kernel eigenvalue, gap, unit gap eigenvector, rounding level).
    """

    matrix = gen.dense_symmetrized()
    rounding = float(np.finfo(np.float64).eps * np.abs(matrix).sum(axis=1).max())
    values, vectors = eigh(matrix, subset_by_index=[0, 1])
    return float(values[0]), float(values[1]), vectors[:, 1], rounding


def _kernel_residual(gen: GeneratorOperator) -> float:
    return float(np.linalg.norm(gen.apply(gen.get_sqrt_stationary())) / gen.get_scale())


def _jacobi(diagonal: np.ndarray) -> LinearOperator:
    def _solve(v: np.ndarray) -> np.ndarray:
        return v / diagonal if v.ndim == 1 else v / diagonal[:, None]

    return LinearOperator((diagonal.shape[0], diagonal.shape[0]), matvec=_solve, matmat=_solve, dtype=np.float64)


def _deflate(v: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    v = v - kernel * float(np.dot(kernel, v))
    return v / np.linalg.norm(v)


def _iterative_lowest(gen: GeneratorOperator) -> Tuple[float, np.ndarray, float]:
    """Helper function to get the lowest eigenpair of S restricted to the complement of sqrt(mu).

    :param gen: The generator.
    :return: (gap, unit gap eigenvector, residual).
    """

    kernel = gen.get_sqrt_stationary()
    scale = gen.get_scale()
    rng = make_rng(gen.get_box().get_side(), gen.get_dimension())
    start = rng.standard_normal((gen.get_dimension(), _LOBPCG_BLOCK))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        values, vectors = lobpcg(gen.as_linear_operator(), start, M=_jacobi(gen.get_diagonal()),
                                 Y=kernel[:, None], tol=1e-10 * scale, maxiter=_LOBPCG_MAXITER, largest=False)

    v = _deflate(vectors[:, int(np.argmin(values))], kernel)
    value = float(np.dot(v, gen.apply(v)))
    residual = _residual(gen, v, value)
    _logger.info("LOBPCG on dimension %d: gap %s, residual %.3g", gen.get_dimension(), value, residual)
    if residual <= RESIDUAL_TOLERANCE:
        return value, v, residual

    # Lanczos on S + 2 max(d) P, P the projector onto sqrt(mu), whose lowest eigenvalue is the gap
    shift = 2.0 * scale
    deflated = LinearOperator((gen.get_dimension(), gen.get_dimension()), dtype=np.float64,
                              matvec=lambda u: gen.apply(u) + shift * kernel * float(np.dot(kernel, u)))
    _logger.warning("LOBPCG residual %.3g above %.1g, falling back to Lanczos", residual, RESIDUAL_TOLERANCE)
    try:
        values, vectors = eigsh(deflated, k=1, which="SA", v0=v, tol=1e-13, maxiter=_LANCZOS_MAXITER)
    except (ArpackNoConvergence, ArpackError) as e:
        _logger.error("Lanczos did not converge on dimension %d: %s", gen.get_dimension(), e)
        raise ConvergenceError("Iterative eigensolve did not converge, residual {:.3g}".format(residual), residual)
    v = _deflate(vectors[:, 0], kernel)
    value = float(np.dot(v, gen.apply(v)))
    return value, v, _residual(gen, v, value)


def exact_gap(gen: GeneratorOperator, witness: bool = True) -> GapResult:
    """Gets the smallest positive eigenvalue of -A.

    :param gen: The generator.
    :param witness: Whether to keep the gap eigenfunction in the result.
    :return: The gap result.
    :raise ConvergenceError: If constants are not in the kernel, the kernel is not resolved from the gap, or
        the residual of the eigenpair exceeds RESIDUAL_TOLERANCE.
    """

    # sqrt(mu) spans the kernel of S
    kernel_residual = _kernel_residual(gen)
    if not kernel_residual <= RESIDUAL_TOLERANCE:
        _logger.error("Constants are not annihilated on %s: residual %.3g", gen, kernel_residual)
        raise ConvergenceError("Kernel check failed: ||S sqrt(mu)|| / max d = {:.3g}".format(kernel_residual),
                               kernel_residual)

    if gen.get_dimension() <= gen.get_settings().get_dense_limit():
        kernel, gap, v, rounding = _dense_lowest(gen)
        method = "dense_eig"
        residual = _residual(gen, v, gap)
        noise = max(abs(kernel), rounding)
        if not gap > _KERNEL_SEPARATION * noise:
            _logger.error("Bottom eigenvalues %s and %s of %s are not resolved at rounding level %.3g",
                          kernel, gap, gen, noise)
            raise ConvergenceError("Simple kernel not resolved: bottom eigenvalues {:.6g} and {:.6g} at rounding "
                                   "level {:.3g}".format(kernel, gap, noise), residual)
        if gap < _PRECISION_WARNING * noise:
            _logger.warning("Gap %s on %s is only %.3g rounding units above the kernel", gap, gen, gap / noise)
    else:
        gap, v, residual = _iterative_lowest(gen)
        kernel = None
        method = "iterative_eig"
        if not gap > 0:
            _logger.error("Deflated eigensolve on %s returned the non-positive gap %s", gen, gap)
            raise ConvergenceError("Deflated eigensolve returned the non-positive gap {}".format(gap), residual)

    if not residual <= RESIDUAL_TOLERANCE:
        _logger.error("Eigenpair for %s has residual %.3g", gen, residual)
        raise ConvergenceError("Spectral gap did not converge: residual {:.3g} > {}"
                               .format(residual, RESIDUAL_TOLERANCE), residual)

    function = None
    if witness:
        function = v / gen.get_sqrt_stationary()
        # Fix the sign so that repeated runs agree
        if function[int(np.argmax(np.abs(function)))] < 0:
            function = -function

    return GapResult(l=gen.get_box().get_side(), beta=gen.get_beta(), boundary_descriptor=gen.get_omega().get_descriptor(),
                     rates=gen.get_rates().get_kind(), gap=gap, kernel=kernel, method=method,
                     residual=residual, witness=function)


def symmetrized_spectrum(gen: GeneratorOperator) -> np.ndarray:
    return eigvalsh(gen.dense_symmetrized())


def unsymmetric_spectrum(gen: GeneratorOperator) -> np.ndarray:
    """Gets the eigenvalues of -A with a general (non-symmetric) eigensolver.

    :param gen: The generator, within the dense limit.
    :return: The real parts of the eigenvalues, ascending.
    """

    gen.require_dense("The unsymmetric spectrum")
    values = eigvals(-gen.sparse_generator().toarray())
    if np.max(np.abs(values.imag)) > RESIDUAL_TOLERANCE * gen.get_scale():
        _logger.warning("Unsymmetric spectrum of %s has imaginary parts up to %.3g",
                        gen, float(np.max(np.abs(values.imag))))
    return np.sort(values.real)

# endregion Gap computation


# region Variational bounds

def mu_mean(gen: GeneratorOperator, f: np.ndarray) -> float:
    return float(np.dot(gen.get_stationary(), f))


def mu_norm(gen: GeneratorOperator, f: np.ndarray) -> float:
    return math.sqrt(float(np.dot(gen.get_stationary(), np.asarray(f, dtype=np.float64) ** 2)))


def rayleigh_quotient(gen: GeneratorOperator, f: np.ndarray) -> float:
    """Gets -mu(f A f) / mu(|f - mu f|^2), which is never below the gap.

    :param gen: The generator.
    :param f: Values indexed by configuration, not mu-almost surely constant.
    :return: The quotient.
    """

    f = np.asarray(f, dtype=np.float64)
    if f.shape != (gen.get_dimension(),):
        raise ValueError("Function has shape {}, expected ({},)".format(f.shape, gen.get_dimension()))

    mu = gen.get_stationary()
    variance = float(np.dot(mu, (f - np.dot(mu, f)) ** 2))
    if variance <= _CONSTANT_TOLERANCE * max(float(np.dot(mu, f * f)), np.finfo(float).tiny):
        raise ValueError("Rayleigh quotient of a constant function is undefined")
    return gen.dirichlet_form(f) / variance


def _log_boundary_flux(gen: GeneratorOperator, mask: np.ndarray, symmetric: bool = False) -> float:
    """Helper function to get log of sum over x and sigma in Gamma with sigma^x outside Gamma of mu(sigma).

    With symmetric set, each pair is weighted by min(mu(sigma), mu(sigma^x)) instead, which makes the
    sum the same for Gamma and its complement.

    :param gen: The generator.
    :param mask: The event, indexed by configuration.
    :param symmetric: Whether to weight each pair by the smaller of its two Gibbs weights.
    :return: The log flux; -inf if nothing leaves the event.
    """

    table = gen.get_gibbs()
    partial = []
    for states, log_weights in table.iter_log_weights():
        inside = mask[states]
        if not inside.any():
            continue
        members = states[inside]
        leaving = ~mask[members[:, None] ^ gen.get_flip_masks()[None, :]]
        if not leaving.any():
            continue
        if symmetric:
            # log mu(sigma^x) = log mu(sigma) - beta Delta_x H(sigma)
            delta = table.get_hamiltonian().delta_flips(members)
            pairs = log_weights[inside][:, None] + np.minimum(0.0, -table.get_beta() * delta)
            partial.append(float(logsumexp(pairs[leaving])))
        else:
            exits = np.count_nonzero(leaving, axis=1)
            moving = exits > 0
            partial.append(float(logsumexp(log_weights[inside][moving] + np.log(exits[moving]))))
    if not partial:
        return -np.inf
    return float(logsumexp(partial)) - table.get_log_z()


def _event_logs(gen: GeneratorOperator, event: Predicate, vectorized: bool) -> Tuple[np.ndarray, float, float]:
    table = gen.get_gibbs()
    mask = event_mask(table, event, vectorized)
    return mask, log_event_probability(table, mask), log_event_probability(table, ~mask)


def indicator_upper_bound(gen: GeneratorOperator, event: Predicate, vectorized: bool = False) -> float:
    """Gets the gap upper bound from the indicator of an event Gamma.

    q_upper / (mu(Gamma) mu(Gamma^c)) * sum_x sum_{sigma in Gamma, sigma^x not in Gamma} m(sigma, sigma^x),
    m the smaller of the two Gibbs weights, evaluated in the log domain. Detailed balance gives
    mu(sigma) q(x, sigma) <= q_upper m(sigma, sigma^x), so the bound dominates the Rayleigh quotient of
    the indicator; it takes the same value on Gamma^c.

    :param gen: The generator.
    :param event: A boolean mask indexed by configuration, or a predicate on configurations.
    :param vectorized: Whether a callable predicate takes an array of configurations.
    :return: The bound, never below the gap.
    """

    mask, log_inside, log_outside = _event_logs(gen, event, vectorized)
    if not log_inside + log_outside >= math.log(_DEGENERATE_EVENT):
        _logger.error("indicator_upper_bound given a trivial event: log mu=%s, log mu^c=%s", log_inside, log_outside)
        raise ValueError("Event is trivial: mu(Gamma) mu(Gamma^c) < {}".format(_DEGENERATE_EVENT))

    log_bound = math.log(gen.get_rates().q_upper()) + _log_boundary_flux(gen, mask, symmetric=True) \
        - log_inside - log_outside
    return float(np.exp(log_bound))


def trap_exit_flux(gen: GeneratorOperator, event: Predicate, vectorized: bool = False) -> float:
    """Gets the flux out of an event relative to its complement.

    sum_x sum_{sigma in Gamma, sigma^x not in Gamma} mu(sigma) / mu(Gamma^c).

    :param gen: The generator.
    :param event: A boolean mask indexed by configuration, or a predicate on configurations.
    :param vectorized: Whether a callable predicate takes an array of configurations.
    :return: The relative flux.
    """

    mask, _, log_outside = _event_logs(gen, event, vectorized)
    if log_outside == -np.inf:
        raise ValueError("Event complement has probability zero")
    return float(np.exp(_log_boundary_flux(gen, mask) - log_outside))


def schonmann_lower_bound(l: int, beta: float, q_lower: float) -> float:
    """Gets the general lower bound q_lower l^-2 exp(-4 beta (1 + l)) on the gap in two dimensions.

    :param l: The side length, l >= 1.
    :param beta: The inverse temperature, beta >= 0.
    :param q_lower: The lower bound on the rates, q_lower > 0.
    :return: The bound.
    """

    if l < 1 or beta < 0 or not q_lower > 0:
        raise ValueError("Need l >= 1, beta >= 0 and q_lower > 0, got l={}, beta={}, q_lower={}"
                         .format(l, beta, q_lower))
    return q_lower * l ** -2 * math.exp(-4.0 * beta * (1 + l))

# endregion Variational bounds


def evolve(gen: GeneratorOperator, f: np.ndarray, t: float) -> np.ndarray:
    """Gets S(t) f = exp(t A) f through the symmetrised operator.

    :param gen: The generator, within the dense limit.
    :param f: Values indexed by configuration.
    :param t: The time, t >= 0.
    :return: The evolved function.
    """

    if t < 0:
        raise ValueError("Semigroup time must be non-negative, got {}".format(t))
    root = gen.get_sqrt_stationary()
    return (expm(-t * gen.dense_symmetrized()) @ (root * np.asarray(f, dtype=np.float64))) / root


if __name__ == '__main__':
    pass
