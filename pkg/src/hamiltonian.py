#!/usr/bin/env python3
"""
Bit-packed spin configurations and the Ising Hamiltonian with boundary field.

A configuration of Lambda(l) is a Python int: bit i is 1 when the spin at the site of canonical
index i is +1. The energy sums every unordered bond once:

    H(sigma) = - sum_{interior bonds xy} sigma_x sigma_y - sum_{boundary bonds xy, y outside} sigma_x omega_y

so flipping x changes it by Delta H = 2 sigma_x (sum of in-box neighbour spins + sum of exterior omega).

Usage:
    ham = Hamiltonian(box, omega)
    ham.energy(sigma)
    ham.energy_delta_flip(sigma, index)
    for states, energies in ham.iter_energies(): ...
"""

import logging
import numpy as np
from typing import Iterator, Optional, Sequence, Tuple

from boundaries import BaseBoundary
from config import get_log_level
from lattice import Box, Site

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# States are processed in blocks of this many rows when sweeping the configuration space
BLOCK_SIZE = 2 ** 16


# region Configuration helpers

def spin_at(sigma: int, index: int) -> int:
    return 1 if (sigma >> index) & 1 else -1


def flip(sigma: int, index: int) -> int:
    return sigma ^ (1 << index)


def full_mask(box: Box) -> int:
    return (1 << box.get_size()) - 1


def constant_configuration(box: Box, epsilon: int) -> int:
    """Gets the configuration with every spin equal to epsilon.

    :param box: The box.
    :param epsilon: The sign, +1 or -1.
    :return: The configuration.
    """

    return full_mask(box) if epsilon > 0 else 0


def global_flip(sigma: int, box: Box) -> int:
    return sigma ^ full_mask(box)


def from_spins(spins: Sequence[int]) -> int:
    """Packs spins in canonical order into a configuration.

    :param spins: The spins, each +1 or -1.
    :return: The configuration.
    """

    sigma = 0
    for index, spin in enumerate(spins):
        if spin not in (1, -1):
            raise ValueError("Spins must be +1 or -1, got {} at index {}".format(spin, index))
        if spin > 0:
            sigma |= 1 << index
    return sigma


def to_spins(sigma: int, box: Box) -> np.ndarray:
    """Unpacks a configuration into an int8 array of spins in canonical order.

    :param sigma: The configuration.
    :param box: The box.
    :return: The spins.
    """

    bits = (sigma >> np.arange(box.get_size(), dtype=np.int64)) & 1
    return (2 * bits - 1).astype(np.int8)


def to_grid(sigma: int, box: Box) -> np.ndarray:
    """Unpacks a configuration into an l x l array indexed [x2 - lo, x1 - lo].

    :param sigma: The configuration.
    :param box: The box.
    :return: The spins as a grid.
    """

    l = box.get_side()
    return to_spins(sigma, box).reshape(l, l)


def from_grid(grid: np.ndarray) -> int:
    return from_spins([int(s) for s in np.asarray(grid).reshape(-1)])


def random_configuration(box: Box, rng: np.random.Generator) -> int:
    bits = rng.integers(0, 2, size=box.get_size())
    return sum(1 << i for i, bit in enumerate(bits) if bit)


def spins_of_states(states: np.ndarray, n: int) -> np.ndarray:
    """Unpacks an array of configurations into a (len(states), n) int8 array of spins.

    :param states: The configurations, as integers below 2^n.
    :param n: The number of sites.
    :return: The spins.
    """

    bits = (np.asarray(states, dtype=np.int64)[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1
    return (2 * bits - 1).astype(np.int8)

# endregion Configuration helpers


class Hamiltonian(object):
    """
    Hamiltonian class for the nearest-neighbour Ising energy on a box with a boundary field.

    Attributes
        _BOX            The box.
        _OMEGA          The boundary field.
        _BOND_I         First endpoint indices of the interior bonds.
        _BOND_J         Second endpoint indices of the interior bonds.
        _ADJACENCY      The n x n interior adjacency matrix.
        _FIELDS         Per site, the sum of omega over its exterior neighbours.
    """

    # region Constructors

    def __init__(self, box: Box, omega: BaseBoundary) -> None:
        """Initialisation of Hamiltonian class.

        :param box: The box.
        :param omega: The boundary field on the same box.
        """

        # Sanity check
        if omega.get_box() != box:
            _logger.error("Hamiltonian given a boundary for %s on %s", omega.get_box(), box)
            raise ValueError("Boundary lives on {}, not on {}".format(omega.get_box(), box))

        self._BOX = box
        self._OMEGA = omega
        bonds = box.get_interior_bonds()
        self._BOND_I = np.array([box.index_of(b.a) for b in bonds], dtype=np.int64)
        self._BOND_J = np.array([box.index_of(b.b) for b in bonds], dtype=np.int64)
        adjacency = np.zeros((box.get_size(), box.get_size()), dtype=np.float64)
        adjacency[self._BOND_I, self._BOND_J] = 1.0
        adjacency[self._BOND_J, self._BOND_I] = 1.0
        self._ADJACENCY = adjacency
        self._FIELDS = omega.get_site_fields()

    def __repr__(self) -> str:
        """Overriden __repr__ of Hamiltonian class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": box={}, omega={}".format(repr(self._BOX), self._OMEGA.get_descriptor())

    def __str__(self) -> str:
        return "Hamiltonian on {} with boundary '{}'".format(self._BOX, self._OMEGA.get_descriptor())

    # endregion Constructors

    # region Getter methods

    def get_box(self) -> Box:
        return self._BOX

    def get_omega(self) -> BaseBoundary:
        return self._OMEGA

    def get_fields(self) -> np.ndarray:
        return self._FIELDS

    def get_dimension(self) -> int:
        return 1 << self._BOX.get_size()

    # endregion Getter methods

    # region Single configurations

    def energy(self, sigma: int) -> float:
        """Gets H(sigma).

        :param sigma: The configuration.
        :return: The energy.
        """

        spins = to_spins(sigma, self._BOX).astype(np.float64)
        interior = float(np.dot(spins[self._BOND_I], spins[self._BOND_J]))
        return -interior - float(np.dot(spins, self._FIELDS))

    def local_field(self, sigma: int, index: int) -> float:
        """Gets the sum of neighbouring spins and exterior omega seen by one site.

        :param sigma: The configuration.
        :param index: The canonical index of the site.
        :return: The local field.
        """

        neighbours = sum(spin_at(sigma, j) for j in self._BOX.get_neighbour_indices(index))
        return neighbours + float(self._FIELDS[index])

    def energy_delta_flip(self, sigma: int, index: int) -> float:
        """Gets H(sigma^x) - H(sigma) from the four neighbours of x.

        :param sigma: The configuration.
        :param index: The canonical index of x.
        :return: The energy change.
        """

        return 2.0 * spin_at(sigma, index) * self.local_field(sigma, index)

    # endregion Single configurations

    # region Whole configuration space

    def energies(self, states: np.ndarray) -> np.ndarray:
        """Vectorised energy() over an array of configurations.

        :param states: The configurations.
        :return: The energies.
        """

        spins = spins_of_states(states, self._BOX.get_size()).astype(np.float64)
        interior = np.einsum("ij,ij->i", spins[:, self._BOND_I], spins[:, self._BOND_J])
        return -interior - spins @ self._FIELDS

    def delta_flips(self, states: np.ndarray) -> np.ndarray:
        """Gets Delta H for flipping every site of every configuration.

        :param states: The configurations.
        :return: A (len(states), n) array of energy changes.
        """

        spins = spins_of_states(states, self._BOX.get_size()).astype(np.float64)
        return 2.0 * spins * (spins @ self._ADJACENCY + self._FIELDS[None, :])

    def iter_blocks(self, block_size: Optional[int] = None) -> Iterator[np.ndarray]:
        """Generates the configuration space 0 .. 2^n - 1 in consecutive blocks.

        :param block_size: The block length.
        :return: The blocks of configurations.
        """

        block_size = block_size or BLOCK_SIZE
        dimension = self.get_dimension()
        for start in range(0, dimension, block_size):
            yield np.arange(start, min(start + block_size, dimension), dtype=np.int64)

    def iter_energies(self, block_size: Optional[int] = None) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
        for states in self.iter_blocks(block_size):
            yield states, self.energies(states)

    def all_energies(self) -> np.ndarray:
        return np.concatenate([energies for _, energies in self.iter_energies()])

    # endregion Whole configuration space


def energy(sigma: int, omega: BaseBoundary, box: Box) -> float:
    """Gets H(sigma) for the boundary field omega.

    :param sigma: The configuration.
    :param omega: The boundary field.
    :param box: The box.
    :return: The energy.
    """

    return Hamiltonian(box, omega).energy(sigma)


def energy_delta_flip(sigma: int, x: Site, omega: BaseBoundary) -> float:
    """Gets H(sigma^x) - H(sigma) in constant time.

    :param sigma: The configuration.
    :param x: The site to flip.
    :param omega: The boundary field, whose box is the box of sigma.
    :return: The energy change.
    """

    box = omega.get_box()
    index = box.index_of(x)
    neighbours = sum(spin_at(sigma, j) for j in box.get_neighbour_indices(index))
    return 2.0 * spin_at(sigma, index) * (neighbours + float(omega.get_site_fields()[index]))


if __name__ == '__main__':
    pass
