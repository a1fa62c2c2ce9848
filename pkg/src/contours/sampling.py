#!/usr/bin/env python3
"""
Random contours in a box, and configurations carrying them, for randomized checks.

Usage:
    gamma = random_contour(box, rng)
    gamma, sigma = random_contour_instance(box, rng, epsilon=+1)
"""

import numpy as np
from typing import Optional, Tuple

from contours.geometry import Contour, outer_contour
from hamiltonian import random_configuration
from lattice import Box


def random_contour(box: Box, rng: np.random.Generator, max_size: Optional[int] = None) -> Contour:
    """Draws a contour by growing a random l1-connected site set in the box and filling its holes.

    :param box: The box.
    :param rng: The random generator.
    :param max_size: The largest number of grown sites; all of the box if None.
    :return: The contour, with Theta in the box.
    """

    sites = box.get_sites()
    max_size = box.get_size() if max_size is None else max(1, min(max_size, box.get_size()))
    target = int(rng.integers(1, max_size + 1))
    theta = {sites[int(rng.integers(len(sites)))]}
    while len(theta) < target:
        frontier = sorted({y for x in theta for y in x.neighbours() if box.contains(y) and y not in theta})
        if not frontier:
            break
        theta.add(frontier[int(rng.integers(len(frontier)))])
    return outer_contour(theta)


def random_contour_instance(box: Box, rng: np.random.Generator, epsilon: int,
                            max_size: Optional[int] = None) -> Tuple[Contour, int]:
    """Draws a contour together with a configuration at which it is an (epsilon)-contour.

    Spins in Theta are set to epsilon, spins next to Theta to -epsilon, and the rest are random.

    :param box: The box.
    :param rng: The random generator.
    :param epsilon: The sign.
    :param max_size: The largest number of grown sites.
    :return: (contour with sign epsilon, configuration).
    """

    gamma = random_contour(box, rng, max_size)
    sigma = random_configuration(box, rng)
    theta = gamma.get_theta()
    outside = {y for x in theta for y in x.neighbours() if box.contains(y) and y not in theta}
    for site in theta:
        bit = 1 << box.index_of(site)
        sigma = sigma | bit if epsilon > 0 else sigma & ~bit
    for site in outside:
        bit = 1 << box.index_of(site)
        sigma = sigma & ~bit if epsilon > 0 else sigma | bit
    return gamma.with_sign(epsilon), sigma


if __name__ == '__main__':
    pass
