#!/usr/bin/env python3
"""
The trap event Gamma_l: configurations carrying a long (epsilon)-contour attached to the boundary.

sigma is in Gamma_l when some (epsilon)-contour at sigma has a dual bond on dQ(Lambda(l)) and
length at least 2 delta_1 l. epsilon is the sign of the center magnetization under the Gibbs
measure and delta_1 lies strictly between the (w2) constant and 1 (the midpoint by default).

Usage:
    trap = TrapEvent.from_gibbs(table, delta=0.5)
    in_trap, members = trap_members(sigma, trap, omega, box)
    indicator = trap_indicator(box, trap.get_epsilon(), trap.get_delta_1())
"""

from functools import lru_cache
import logging
import numpy as np
from scipy import ndimage
from typing import List, Tuple

from boundaries import BaseBoundary
from config import get_log_level
from contours.geometry import Contour, epsilon_contours_at
from exceptions import GuardError
from gibbs import GibbsTable, MATERIALISE_SITE_LIMIT, center_sign
from hamiltonian import full_mask, spins_of_states
from lattice import Box, build_box
from mixing import reduce_delta_chain

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# Default (w1) constant the trap's delta_1 is derived from
DEFAULT_DELTA = 0.5

_LENGTH_TOLERANCE = 1e-9


def midpoint_delta_1(delta_w2: float) -> float:
    return (delta_w2 + 1.0) / 2.0


class TrapEvent(object):
    """
    TrapEvent class for Gamma_l at a given sign and length fraction.

    Attributes
        _L          The side length of the box.
        _EPSILON    The sign epsilon of the trapping contours.
        _DELTA_1    The length fraction, delta_w2 < delta_1 < 1.
    """

    # region Constructors

    def __init__(self, l: int, epsilon: int, delta_1: float) -> None:
        """Initialisation of TrapEvent class.

        :param l: The side length of the box.
        :param epsilon: The sign, +1 or -1.
        :param delta_1: The length fraction, 0 < delta_1 < 1.
        """

        # Sanity check
        if epsilon not in (1, -1):
            raise ValueError("Trap sign must be +1 or -1, got {}".format(epsilon))
        if not 0.0 < delta_1 < 1.0:
            _logger.error("TrapEvent needs 0 < delta_1 < 1, delta_1=%s", delta_1)
            raise ValueError("delta_1 must lie in (0, 1), got {}".format(delta_1))

        self._L = int(l)
        self._EPSILON = int(epsilon)
        self._DELTA_1 = float(delta_1)

    @classmethod
    def from_delta(cls, l: int, epsilon: int, delta: float = DEFAULT_DELTA) -> "TrapEvent":
        """Builds the trap for a (w1) constant, with delta_1 the midpoint of (delta_w2, 1).

        :param l: The side length of the box.
        :param epsilon: The sign.
        :param delta: The (w1) constant.
        :return: The trap event.
        """

        _, delta_w2 = reduce_delta_chain(delta)
        return cls(l, epsilon, midpoint_delta_1(delta_w2))

    @classmethod
    def from_gibbs(cls, table: GibbsTable, delta: float = DEFAULT_DELTA) -> "TrapEvent":
        """Builds the trap with epsilon the sign of the center magnetization of a Gibbs table.

        :param table: The Gibbs table.
        :param delta: The (w1) constant.
        :return: The trap event.
        """

        return cls.from_delta(table.get_box().get_side(), center_sign(table), delta)

    def __repr__(self) -> str:
        """Overriden __repr__ of TrapEvent class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": l={}, epsilon={}, delta_1={}".format(self._L, self._EPSILON, self._DELTA_1)

    def __str__(self) -> str:
        return "Gamma_{} for sign {:+d}, contours of length >= {:.4g}" \
            .format(self._L, self._EPSILON, self.get_min_length())

    def __eq__(self, other: "TrapEvent") -> bool:
        return isinstance(other, TrapEvent) and (self._L, self._EPSILON, self._DELTA_1) == \
            (other._L, other._EPSILON, other._DELTA_1)

    def __hash__(self) -> int:
        return hash((self._L, self._EPSILON, self._DELTA_1))

    # endregion Constructors

    # region Getter methods

    def get_l(self) -> int:
        return self._L

    def get_epsilon(self) -> int:
        return self._EPSILON

    def get_delta_1(self) -> float:
        return self._DELTA_1

    def get_min_length(self) -> float:
        return 2.0 * self._DELTA_1 * self._L

    # endregion Getter methods

    def contains(self, sigma: int) -> bool:
        box = build_box(self._L)
        return _grid_in_trap(_sign_grid(sigma, box) == self._EPSILON, self.get_min_length())


def _sign_grid(sigma: int, box: Box) -> np.ndarray:
    l = box.get_side()
    return spins_of_states(np.array([sigma], dtype=np.int64), box.get_size())[0].reshape(l, l)


def _grid_in_trap(mask: np.ndarray, min_length: float) -> bool:
    """Helper function to decide trap membership from the grid of epsilon spins.

    :param mask: Boolean l x l grid, True where the spin equals epsilon.
    :param min_length: The length threshold 2 delta_1 l.
    :return: Whether some cluster touching the box edge has an outer contour at least that long.
    """

    labels, count = ndimage.label(mask)
    if count == 0:
        return False
    edge = np.unique(np.concatenate((labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1])))
    for k in edge[edge > 0]:
        filled = np.pad(ndimage.binary_fill_holes(labels == k), 1)
        length = np.count_nonzero(filled[:, 1:] != filled[:, :-1]) + np.count_nonzero(filled[1:, :] != filled[:-1, :])
        if length >= min_length - _LENGTH_TOLERANCE:
            return True
    return False


def trap_members(sigma: int, trap: TrapEvent, omega: BaseBoundary, box: Box) -> Tuple[bool, List[Contour]]:
    """Gets C_l(sigma), the trapping contours at sigma, and whether sigma lies in Gamma_l.

    Membership depends on the boundary field only through the trap sign, which the trap event
    already carries; omega must live on the same box.

    :param sigma: The configuration.
    :param trap: The trap event.
    :param omega: The boundary field.
    :param box: The box.
    :return: (in_trap, members).
    """

    if box.get_side() != trap.get_l():
        raise ValueError("Trap for l={} used on {}".format(trap.get_l(), box))
    if omega.get_box() != box:
        raise ValueError("Boundary lives on {}, not on {}".format(omega.get_box(), box))
    members = [gamma for gamma in epsilon_contours_at(sigma, trap.get_epsilon(), box)
               if gamma.touches_boundary(box) and len(gamma) >= trap.get_min_length() - _LENGTH_TOLERANCE]
    return bool(members), members


@lru_cache(maxsize=32)
def _plus_indicator(l: int, delta_1: float) -> np.ndarray:
    box = build_box(l)
    min_length = 2.0 * delta_1 * l
    _logger.info("Computing the trap indicator on %s (%d configurations)", box, 1 << box.get_size())
    indicator = np.zeros(1 << box.get_size(), dtype=bool)
    for start in range(0, indicator.shape[0], 1 << 12):
        states = np.arange(start, min(start + (1 << 12), indicator.shape[0]), dtype=np.int64)
        grids = spins_of_states(states, box.get_size()).reshape(-1, l, l) > 0
        for offset, grid in enumerate(grids):
            indicator[start + offset] = _grid_in_trap(grid, min_length)
    indicator.flags.writeable = False
    return indicator


def trap_indicator(box: Box, epsilon: int, delta_1: float) -> np.ndarray:
    """Gets the membership of every configuration in Gamma_l.

    Indicators are cached per (l, delta_1); the minus-sign indicator is the plus-sign one read
    through the global spin flip.

    :param box: The box.
    :param epsilon: The trap sign.
    :param delta_1: The length fraction.
    :return: Read-only boolean array indexed by configuration.
    """

    if box.get_size() > MATERIALISE_SITE_LIMIT:
        _logger.error("trap_indicator refused %s: more than %d sites", box, MATERIALISE_SITE_LIMIT)
        raise GuardError("Trap indicators are tabulated only up to {} sites".format(MATERIALISE_SITE_LIMIT))
    plus = _plus_indicator(box.get_side(), float(delta_1))
    if epsilon > 0:
        return plus
    flipped = plus[np.arange(plus.shape[0], dtype=np.int64) ^ full_mask(box)]
    flipped.flags.writeable = False
    return flipped


if __name__ == '__main__':
    pass
