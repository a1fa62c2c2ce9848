#!/usr/bin/env python3
"""
Flip maps T_gamma and the energy they release.

T_gamma negates every spin in Theta(gamma); composing several contours applies them in sequence.
Delta_{gamma_1..gamma_p} H(sigma) = H(sigma) - H(T_gamma_1 o ... o T_gamma_p sigma).

Usage:
    flip_map([gamma], sigma, box)
    delta_H([gamma], sigma, omega, box)
"""

from typing import Sequence

from boundaries import BaseBoundary
from contours.geometry import Contour
from hamiltonian import Hamiltonian
from lattice import Box


def theta_mask(gamma: Contour, box: Box) -> int:
    """Gets the bit mask of Theta(gamma) in the canonical site order of the box.

    :param gamma: The contour, with Theta in the box.
    :param box: The box.
    :return: The mask.
    """

    mask = 0
    for site in gamma.get_theta():
        mask |= 1 << box.index_of(site)
    return mask


def flip_map(gammas: Sequence[Contour], sigma: int, box: Box) -> int:
    """Applies T_gamma for each contour in sequence.

    :param gammas: The contours.
    :param sigma: The configuration.
    :param box: The box.
    :return: The flipped configuration.
    """

    for gamma in gammas:
        sigma ^= theta_mask(gamma, box)
    return sigma


def delta_H(gammas: Sequence[Contour], sigma: int, omega: BaseBoundary, box: Box) -> float:
    """Gets the energy released by flipping the contours, H(sigma) - H(T sigma).

    :param gammas: The contours.
    :param sigma: The configuration.
    :param omega: The boundary field.
    :param box: The box.
    :return: The energy difference.
    """

    hamiltonian = Hamiltonian(box, omega)
    return hamiltonian.energy(sigma) - hamiltonian.energy(flip_map(gammas, sigma, box))


def half_delta_identity(gamma: Contour, epsilon: int, omega: BaseBoundary, box: Box) -> float:
    """Evaluates |gamma minus dQ(Lambda(l))| - epsilon * sum of omega over V_ex(gamma).

    For an (epsilon)-contour at sigma this equals half of delta_H([gamma], sigma, omega, box):
    every inner dual bond separates an epsilon spin from a -epsilon spin, and every boundary
    dual bond meets exactly one exterior site.

    :param gamma: The contour.
    :param epsilon: The sign of the cluster it encloses.
    :param omega: The boundary field.
    :param box: The box.
    :return: The value.
    """

    boundary_sum = sum(omega.get_value(y) for y in gamma.exterior_sites(box))
    return len(gamma.inner_part(box)) - epsilon * boundary_sum


if __name__ == '__main__':
    pass
