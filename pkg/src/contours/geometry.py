#!/usr/bin/env python3
"""
Contours on the dual lattice: outer boundaries of spin clusters, crossing classes, and the
decomposition of non-crossing contours against the boundary of the box.

A contour is stored as the set of regular bonds whose dual bonds it contains, together with
the enclosed site set Theta (a finite, l1-connected set whose complement is l1-connected too).
A dual bond lies on the boundary of Q(Lambda(l)) exactly when its regular bond is a boundary
bond of the box.

Usage:
    gamma = outer_contour({Site(0, 0)})
    for gamma in epsilon_contours_at(sigma, +1, box): ...
    is_crossing(gamma, box)
    decompose_noncrossing(gamma, box)
"""

from enum import Enum
import logging
import numpy as np
from scipy import ndimage
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from config import get_log_level
from exceptions import HypothesisError
from hamiltonian import to_grid
from lattice import (BOTTOM, LEFT, RIGHT, TOP, BoundaryInterval, Bond, Box, DualBond, DualVertex, Site,
                     interval_from_sites)

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)


# region Site-set helpers

def _to_mask(sites: Iterable[Site]) -> Tuple[np.ndarray, Tuple[int, int]]:
    """Helper function to draw a site set on a boolean grid with a one-cell margin.

    :param sites: The sites.
    :return: The grid indexed [x2 - y0, x1 - x0], and the offset (x0, y0).
    """

    sites = [Site(*s) for s in sites]
    x0 = min(s.x1 for s in sites) - 1
    y0 = min(s.x2 for s in sites) - 1
    width = max(s.x1 for s in sites) - x0 + 2
    height = max(s.x2 for s in sites) - y0 + 2
    mask = np.zeros((height, width), dtype=bool)
    for s in sites:
        mask[s.x2 - y0, s.x1 - x0] = True
    return mask, (x0, y0)


def _from_mask(mask: np.ndarray, offset: Tuple[int, int]) -> FrozenSet[Site]:
    rows, cols = np.nonzero(mask)
    return frozenset(Site(int(c) + offset[0], int(r) + offset[1]) for r, c in zip(rows, cols))


def is_l1_connected(sites: Iterable[Site]) -> bool:
    sites = list(sites)
    if not sites:
        return False
    mask, _ = _to_mask(sites)
    return ndimage.label(mask)[1] == 1


def fill(theta: Iterable[Site]) -> FrozenSet[Site]:
    """Adds the holes of a site set: the finite l1-components of its complement.

    :param theta: The site set.
    :return: The filled set.
    """

    theta = list(theta)
    if not theta:
        return frozenset()
    mask, offset = _to_mask(theta)
    return _from_mask(ndimage.binary_fill_holes(mask), offset)


def edge_boundary(theta: Iterable[Site]) -> FrozenSet[Bond]:
    """Gets the bonds with exactly one endpoint in a site set, i.e. the dual bonds of dQ(Theta).

    :param theta: The site set.
    :return: The bonds.
    """

    theta = frozenset(Site(*s) for s in theta)
    return frozenset(Bond.between(x, y) for x in theta for y in x.neighbours() if y not in theta)

# endregion Site-set helpers


class Crossing(Enum):
    """Which pairs of opposite sides of Q(Lambda(l)) a contour touches."""

    NONE = "none"
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    BOTH = "both"


class Contour(object):
    """
    Contour class for a closed set of dual bonds gamma = dQ(Theta).

    Contours compare and hash by their dual bonds only; the sign is an annotation telling which
    spin value the enclosed cluster carries at the configuration the contour was read from.

    Attributes
        _BONDS  The regular bonds whose duals form the contour.
        _THETA  The enclosed site set Theta(gamma).
        _SIGN   The sign epsilon of the cluster, or None.
    """

    # region Constructors

    def __init__(self, bonds: Iterable[Bond], theta: Iterable[Site], sign: Optional[int] = None) -> None:
        """Initialisation of Contour class.

        :param bonds: The regular bonds whose duals form the contour.
        :param theta: The enclosed site set.
        :param sign: The sign of the enclosed cluster, if known.
        """

        self._BONDS = frozenset(bonds)
        self._THETA = frozenset(Site(*s) for s in theta)
        self._SIGN = sign

    def __repr__(self) -> str:
        """Overriden __repr__ of Contour class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": length={}, sign={}, theta={}" \
            .format(len(self._BONDS), self._SIGN, sorted(self._THETA))

    def __str__(self) -> str:
        """Overriden __str__ of Contour class.

        :return: The __str__ string.
        """

        sign = "" if self._SIGN is None else "({}) ".format("+" if self._SIGN > 0 else "-")
        return "{}contour of length {} around {} sites".format(sign, len(self._BONDS), len(self._THETA))

    def __eq__(self, other: "Contour") -> bool:
        return isinstance(other, Contour) and self._BONDS == other._BONDS

    def __hash__(self) -> int:
        return hash(self._BONDS)

    def __len__(self) -> int:
        return len(self._BONDS)

    # endregion Constructors

    # region Getter methods

    def get_bonds(self) -> Tuple[Bond, ...]:
        """Gets the regular bonds of the contour in canonical (sorted) order."""
        return tuple(sorted(self._BONDS))

    def get_bond_set(self) -> FrozenSet[Bond]:
        return self._BONDS

    def get_dual_bonds(self) -> Tuple[DualBond, ...]:
        return tuple(DualBond(b) for b in self.get_bonds())

    def get_theta(self) -> FrozenSet[Site]:
        return self._THETA

    def get_sign(self) -> Optional[int]:
        return self._SIGN

    def get_vertices(self) -> FrozenSet[DualVertex]:
        return frozenset(v for b in self._BONDS for v in DualBond(b).endpoints())

    def get_sites(self) -> FrozenSet[Site]:
        """Gets V(gamma), the endpoints of the regular bonds of the contour."""
        return frozenset(s for b in self._BONDS for s in b)

    # endregion Getter methods

    def with_sign(self, sign: int) -> "Contour":
        return Contour(self._BONDS, self._THETA, sign)

    def count_horizontal(self) -> int:
        """Counts the horizontal dual bonds (bisecting vertical regular bonds)."""
        return sum(1 for b in self._BONDS if not b.is_horizontal())

    def count_vertical(self) -> int:
        return sum(1 for b in self._BONDS if b.is_horizontal())

    # region Relative to a box

    def boundary_part(self, box: Box) -> FrozenSet[Bond]:
        """Gets gamma n dQ(Lambda(l)).

        :param box: The box.
        :return: The bonds of the contour that are boundary bonds of the box.
        """

        return frozenset(b for b in self._BONDS if box.is_boundary_bond(b))

    def inner_part(self, box: Box) -> FrozenSet[Bond]:
        """Gets gamma minus dQ(Lambda(l))."""
        return frozenset(b for b in self._BONDS if not box.is_boundary_bond(b))

    def exterior_sites(self, box: Box) -> FrozenSet[Site]:
        """Gets V_ex(gamma), the sites of V(gamma) on the exterior boundary."""
        return frozenset(box.exterior_end(b) for b in self.boundary_part(box))

    def touches_boundary(self, box: Box) -> bool:
        return any(box.is_boundary_bond(b) for b in self._BONDS)

    def sides_touched(self, box: Box) -> FrozenSet[int]:
        return frozenset(box.side_of(b) for b in self.boundary_part(box))

    def is_within(self, box: Box) -> bool:
        """Checks that Theta lies in the box, so that every dual bond lies in the closed square."""
        return all(box.contains(s) for s in self._THETA)

    # endregion Relative to a box


def outer_contour(theta: Iterable[Site]) -> Contour:
    """Gets the outer boundary of Q(Theta) for an l1-connected site set.

    :param theta: The site set, finite, non-empty and l1-connected.
    :return: The contour dQ(fill(Theta)), which encloses Theta and its holes.
    """

    theta = frozenset(Site(*s) for s in theta)
    if not theta or not is_l1_connected(theta):
        _logger.error("outer_contour needs a non-empty l1-connected set, got %d sites", len(theta))
        raise ValueError("Outer contours are only defined for non-empty l1-connected site sets")
    filled = fill(theta)
    return Contour(edge_boundary(filled), filled)


def _enclosed_sites(bonds: FrozenSet[Bond]) -> FrozenSet[Site]:
    """Helper function to flood the complement of a closed bond set from outside.

    :param bonds: The regular bonds acting as walls.
    :return: The sites not reachable from outside the bounding box of the bonds.
    """

    sites = [s for b in bonds for s in b]
    x_min = min(s.x1 for s in sites) - 1
    x_max = max(s.x1 for s in sites) + 1
    y_min = min(s.x2 for s in sites) - 1
    y_max = max(s.x2 for s in sites) + 1
    start = Site(x_min, y_min)
    reached = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for y in x.neighbours():
            if x_min <= y.x1 <= x_max and y_min <= y.x2 <= y_max and y not in reached \
                    and Bond.between(x, y) not in bonds:
                reached.add(y)
                frontier.append(y)
    return frozenset(Site(x1, x2) for x1 in range(x_min, x_max + 1) for x2 in range(y_min, y_max + 1)
                     if Site(x1, x2) not in reached)


def contour_from_bonds(bonds: Iterable[Bond], sign: Optional[int] = None) -> Contour:
    """Rebuilds a contour, with its enclosed set, from its bonds.

    :param bonds: The regular bonds whose duals form the contour.
    :param sign: The sign annotation, if any.
    :return: The contour.
    """

    bonds = frozenset(bonds)
    theta = _enclosed_sites(bonds) if bonds else frozenset()
    if not theta or edge_boundary(theta) != bonds or not is_l1_connected(theta):
        raise ValueError("Bonds do not form a contour (dQ(Theta) with Theta and its complement l1-connected)")
    return Contour(bonds, theta, sign)


def is_contour(bonds: Iterable[Bond]) -> bool:
    try:
        contour_from_bonds(bonds)
    except ValueError:
        return False
    return True


def clusters(sigma: int, epsilon: int, box: Box) -> List[FrozenSet[Site]]:
    """Gets the l1-connected components of {x : sigma_x = epsilon}.

    :param sigma: The configuration.
    :param epsilon: The sign, +1 or -1.
    :param box: The box.
    :return: The clusters, ordered by their first site in canonical order.
    """

    lo, _ = box.get_bounds()
    labels, count = ndimage.label(to_grid(sigma, box) == epsilon)
    return [_from_mask(labels == k, (lo, lo)) for k in range(1, count + 1)]


def epsilon_contours_at(sigma: int, epsilon: int, box: Box) -> List[Contour]:
    """Gets the (epsilon)-contours at a configuration, one per (epsilon)-cluster.

    The boundary field plays no part: contours depend on the spins only.

    :param sigma: The configuration.
    :param epsilon: The sign, +1 or -1.
    :param box: The box.
    :return: The outer boundaries of the clusters, with sign epsilon.
    """

    return [outer_contour(cluster).with_sign(epsilon) for cluster in clusters(sigma, epsilon, box)]


def is_crossing(gamma: Contour, box: Box) -> Crossing:
    """Classifies a contour by the pairs of opposite sides of Q(Lambda(l)) it touches.

    :param gamma: The contour.
    :param box: The box.
    :return: HORIZONTAL if it touches the right and left sides, VERTICAL for top and bottom.
    """

    sides = gamma.sides_touched(box)
    horizontal = RIGHT in sides and LEFT in sides
    vertical = TOP in sides and BOTTOM in sides
    if horizontal and vertical:
        return Crossing.BOTH
    if horizontal:
        return Crossing.HORIZONTAL
    if vertical:
        return Crossing.VERTICAL
    return Crossing.NONE


class NonCrossingDecomposition(object):
    """
    NonCrossingDecomposition class for a non-crossing contour split against the box boundary.

    Attributes
        _UNDERLINE      The component of gamma minus dQ(Lambda(l)) cutting off Theta~ from the far corner.
        _OVERLINE       dQ(Lambda(l)) n dQ(Theta~).
        _INTERVAL       I(gamma), the exterior sites of the overline bonds.
        _THETA_TILDE    The side of the underline component containing Theta(gamma).
    """

    # region Constructors

    def __init__(self, underline: FrozenSet[Bond], overline: FrozenSet[Bond], interval: BoundaryInterval,
                 theta_tilde: FrozenSet[Site]) -> None:
        self._UNDERLINE = underline
        self._OVERLINE = overline
        self._INTERVAL = interval
        self._THETA_TILDE = theta_tilde

    def __repr__(self) -> str:
        """Overriden __repr__ of NonCrossingDecomposition class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": |underline|={}, |overline|={}, interval={}" \
            .format(len(self._UNDERLINE), len(self._OVERLINE), self._INTERVAL)

    # endregion Constructors

    # region Getter methods

    def get_underline(self) -> FrozenSet[Bond]:
        return self._UNDERLINE

    def get_overline(self) -> FrozenSet[Bond]:
        return self._OVERLINE

    def get_interval(self) -> BoundaryInterval:
        return self._INTERVAL

    def get_theta_tilde(self) -> FrozenSet[Site]:
        return self._THETA_TILDE

    # endregion Getter methods

    def is_degenerate(self) -> bool:
        return not self._OVERLINE


def inner_components(gamma: Contour, box: Box) -> List[FrozenSet[Bond]]:
    """Splits gamma minus dQ(Lambda(l)) into connected components.

    Two dual bonds are connected through a shared dual vertex that is not on dQ(Lambda(l)).

    :param gamma: The contour.
    :param box: The box.
    :return: The components, ordered by their smallest bond.
    """

    inner = sorted(gamma.inner_part(box))
    at_vertex: Dict[DualVertex, List[Bond]] = {}
    for b in inner:
        for v in DualBond(b).endpoints():
            if not box.is_boundary_vertex(v):
                at_vertex.setdefault(v, []).append(b)

    components, seen = [], set()
    for b in inner:
        if b in seen:
            continue
        component, frontier = {b}, [b]
        seen.add(b)
        while frontier:
            current = frontier.pop()
            for v in DualBond(current).endpoints():
                for other in at_vertex.get(v, ()):
                    if other not in seen:
                        seen.add(other)
                        component.add(other)
                        frontier.append(other)
        components.append(frozenset(component))
    return components


def _cut_off(box: Box, walls: FrozenSet[Bond], start: Site) -> FrozenSet[Site]:
    """Helper function to get the box sites not reachable from a start site across walls.

    :param box: The box.
    :param walls: The bonds that cannot be crossed.
    :param start: The start site.
    :return: The sites of the box separated from the start site.
    """

    reached = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for y in x.neighbours():
            if box.contains(y) and y not in reached and Bond.between(x, y) not in walls:
                reached.add(y)
                frontier.append(y)
    return frozenset(s for s in box.get_sites() if s not in reached)


def decompose_noncrossing(gamma: Contour, box: Box) -> NonCrossingDecomposition:
    """Decomposes a non-crossing contour in the box against dQ(Lambda(l)).

    A contour avoiding the boundary gets the degenerate decomposition: the whole contour as the
    distinguished component, no boundary bonds and an empty interval.

    :param gamma: The contour, with Theta in the box.
    :param box: The box.
    :return: The decomposition.
    """

    crossing = is_crossing(gamma, box)
    if crossing != Crossing.NONE:
        _logger.error("decompose_noncrossing given a %s crossing contour", crossing.value)
        raise HypothesisError("Contour is {} crossing; only non-crossing contours decompose".format(crossing.value))
    if not gamma.is_within(box):
        raise HypothesisError("Contour encloses sites outside {}".format(box))

    if not gamma.touches_boundary(box):
        return NonCrossingDecomposition(gamma.get_bond_set(), frozenset(), BoundaryInterval(()), gamma.get_theta())

    # The corner where two missed sides meet lies outside Theta
    sides = gamma.sides_touched(box)
    corner = box.corner_site(RIGHT if RIGHT not in sides else LEFT, TOP if TOP not in sides else BOTTOM)
    theta = gamma.get_theta()

    candidates = []
    for component in inner_components(gamma, box):
        theta_tilde = _cut_off(box, component, corner)
        if theta_tilde and theta <= theta_tilde:
            candidates.append((component, theta_tilde))
    if not candidates:
        _logger.error("decompose_noncrossing found no separating component for %s", gamma)
        raise HypothesisError("No component of the contour separates Theta from the far corner")
    if len(candidates) > 1:
        _logger.warning("decompose_noncrossing found %d separating components, using the smallest Theta~",
                        len(candidates))
    underline, theta_tilde = min(candidates, key=lambda c: (len(c[1]), sorted(c[0])))

    overline = frozenset(b for b in edge_boundary(theta_tilde) if box.is_boundary_bond(b))
    interval = interval_from_sites(box, (box.exterior_end(b) for b in overline))
    return NonCrossingDecomposition(underline, overline, interval, theta_tilde)


if __name__ == '__main__':
    pass
