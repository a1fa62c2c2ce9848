#!/usr/bin/env python3
"""
Sites, bonds, dual bonds, boundaries and boundary intervals of the box Lambda(l).

The box Lambda(l) = (-l/2, l/2]^2 n Z^2 is built once per side length and shared; every
other module indexes configurations through the canonical site order fixed here
(row-major: x2 is the row, x1 the column, both increasing).

Dual vertices are written as integer pairs (i, j) standing for the point (i + 1/2, j + 1/2),
so every dual bond has integer endpoints.

Usage:
    box = build_box(4)
    box.get_exterior_cycle()
    intervals_of_length(box, 4)
"""

from functools import lru_cache
import logging
from more_itertools import windowed
from typing import FrozenSet, Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple

from config import get_log_level

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# A dual vertex (i, j) is the point (i + 1/2, j + 1/2)
DualVertex = Tuple[int, int]

# Sides of Q(Lambda(l)): right, left, top, bottom
RIGHT, LEFT, TOP, BOTTOM = +1, -1, +2, -2
SIDES = (RIGHT, LEFT, TOP, BOTTOM)


class Site(NamedTuple):
    """A site x = (x1, x2) of Z^2."""

    x1: int
    x2: int

    def l1_norm(self) -> int:
        return abs(self.x1) + abs(self.x2)

    def linf_norm(self) -> int:
        return max(abs(self.x1), abs(self.x2))

    def l1_distance(self, other: "Site") -> int:
        return abs(self.x1 - other.x1) + abs(self.x2 - other.x2)

    def linf_distance(self, other: "Site") -> int:
        return max(abs(self.x1 - other.x1), abs(self.x2 - other.x2))

    def shifted(self, d1: int, d2: int) -> "Site":
        return Site(self.x1 + d1, self.x2 + d2)

    def neighbours(self) -> Tuple["Site", "Site", "Site", "Site"]:
        """Gets the four l1-neighbours, in the order right, up, left, down.

        :return: The neighbouring sites.
        """

        return self.shifted(1, 0), self.shifted(0, 1), self.shifted(-1, 0), self.shifted(0, -1)


class Bond(NamedTuple):
    """A regular bond {a, b} with ||a - b||_1 = 1, stored with a < b."""

    a: Site
    b: Site

    @classmethod
    def between(cls, x: Site, y: Site) -> "Bond":
        """Builds the bond between two l1-adjacent sites.

        :param x: One endpoint.
        :param y: The other endpoint.
        :return: The bond, endpoints in canonical order.
        """

        x, y = Site(*x), Site(*y)
        if x.l1_distance(y) != 1:
            raise ValueError("Sites {} and {} are not l1-adjacent".format(x, y))
        return cls(x, y) if x < y else cls(y, x)

    def is_horizontal(self) -> bool:
        """Checks if the regular bond is horizontal (endpoints differ in x1)."""
        return self.a.x2 == self.b.x2


class DualBond(NamedTuple):
    """The dual bond b*, the perpendicular bisector of the regular bond b."""

    bond: Bond

    @classmethod
    def from_endpoints(cls, u: DualVertex, v: DualVertex) -> "DualBond":
        """Rebuilds a dual bond from its two dual-vertex endpoints.

        :param u: One endpoint (i, j).
        :param v: The other endpoint.
        :return: The dual bond.
        """

        if u[0] == v[0] and abs(u[1] - v[1]) == 1:
            # Vertical dual bond, bisecting a horizontal regular bond
            i, j = u[0], max(u[1], v[1])
            return cls(Bond.between(Site(i, j), Site(i + 1, j)))
        if u[1] == v[1] and abs(u[0] - v[0]) == 1:
            i, j = max(u[0], v[0]), u[1]
            return cls(Bond.between(Site(i, j), Site(i, j + 1)))
        raise ValueError("Dual vertices {} and {} are not adjacent".format(u, v))

    def endpoints(self) -> Tuple[DualVertex, DualVertex]:
        """Gets the two dual-vertex endpoints of the dual bond.

        :return: The endpoints (i, j), each standing for (i + 1/2, j + 1/2).
        """

        a = self.bond.a
        if self.bond.is_horizontal():
            return (a.x1, a.x2 - 1), (a.x1, a.x2)
        return (a.x1 - 1, a.x2), (a.x1, a.x2)

    def is_horizontal(self) -> bool:
        """Checks if the dual bond itself is horizontal (it bisects a vertical regular bond)."""
        return not self.bond.is_horizontal()


def dual_of(bond: Bond) -> DualBond:
    return DualBond(bond)


def bond_of(dual: DualBond) -> Bond:
    return dual.bond


def is_linf_connected(sites: Iterable[Site]) -> bool:
    """Checks l-infinity connectivity of a finite site set by breadth-first search.

    :param sites: The sites.
    :return: True if the set is l-infinity connected (the empty set counts as connected).
    """

    remaining = set(Site(*s) for s in sites)
    if not remaining:
        return True
    frontier = [remaining.pop()]
    while frontier:
        x = frontier.pop()
        adjacent = [y for y in remaining if x.linf_distance(y) == 1]
        for y in adjacent:
            remaining.discard(y)
        frontier.extend(adjacent)
    return not remaining


class BoundaryInterval(object):
    """BoundaryInterval class for l-infinity connected subsets of the exterior boundary.

    Intervals produced here are contiguous arcs of the exterior boundary cycle.

    Attributes
        _SITES  The sites of the interval, in cycle order.
        _START  The cycle position of the first site, or None for the empty interval.
    """

    # region Constructors

    def __init__(self, sites: Sequence[Site], start: Optional[int] = None) -> None:
        """Initialisation of the BoundaryInterval class.

        :param sites: The sites of the interval, in cycle order.
        :param start: The cycle position of the first site.
        """

        self._SITES = tuple(Site(*s) for s in sites)
        self._START = start

    def __repr__(self) -> str:
        """Overriden __repr__ of BoundaryInterval class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": start={}, sites={}".format(self._START, self._SITES)

    def __str__(self) -> str:
        """Overriden __str__ of BoundaryInterval class.

        :return: The __str__ string.
        """

        if not self._SITES:
            return "empty interval"
        return "interval of length {} from {} to {}".format(len(self._SITES), self._SITES[0], self._SITES[-1])

    def __eq__(self, other: "BoundaryInterval") -> bool:
        """Overriden __eq__ of BoundaryInterval class.

        Two intervals are equal if they list the same sites in the same order.

        :param other: The other BoundaryInterval instance to compare.
        :return: Whether the two instances are equal.
        """

        return isinstance(other, BoundaryInterval) and self._SITES == other._SITES

    def __hash__(self) -> int:
        return hash(self._SITES)

    def __len__(self) -> int:
        return len(self._SITES)

    def __iter__(self) -> Iterator[Site]:
        return iter(self._SITES)

    def __contains__(self, site: Site) -> bool:
        return Site(*site) in self._SITES

    # endregion Constructors

    # region Getter methods

    def get_sites(self) -> Tuple[Site, ...]:
        return self._SITES

    def get_start(self) -> Optional[int]:
        return self._START

    def as_set(self) -> FrozenSet[Site]:
        return frozenset(self._SITES)

    # endregion Getter methods

    def is_linf_connected(self) -> bool:
        return is_linf_connected(self._SITES)


class Box(object):
    """Box class for the square Lambda(l) = (-l/2, l/2]^2 n Z^2.

    The box precomputes everything the other modules look up repeatedly: the canonical site
    order, interior and boundary bonds, both boundaries, the exterior boundary cycle and the
    per-site neighbour tables. Instances are immutable and shared through build_box().

    Attributes
        _L              The side length l.
        _LO, _HI        The smallest and largest coordinate of a box site.
        _SITES          The sites in canonical (row-major) order.
        _INDEX          Mapping from site to canonical index.
        _INTERIOR_BONDS Bonds with both endpoints in the box.
        _BOUNDARY_BONDS Bonds with exactly one endpoint in the box.
        _INNER_BOUNDARY The interior boundary, as a frozenset.
        _CYCLE          The exterior boundary in counterclockwise cycle order.
        _CYCLE_INDEX    Mapping from exterior site to cycle position.
        _NEIGHBOURS     Per site index, the indices of its in-box l1-neighbours.
        _EXTERIOR       Per site index, the cycle positions of its exterior l1-neighbours.
    """

    # region Constructors

    def __init__(self, l: int) -> None:
        """Initialisation of the Box class.

        :param l: The side length, at least 1.
        """

        # Sanity check
        if not isinstance(l, int) or isinstance(l, bool) or l < 1:
            _logger.error("Box side length must be a positive integer, l=%s", l)
            raise ValueError("Box side length must be a positive integer, got {}".format(l))

        self._L = l
        self._HI = l // 2
        self._LO = self._HI - l + 1
        self._SITES = tuple(Site(x1, x2) for x2 in range(self._LO, self._HI + 1)
                            for x1 in range(self._LO, self._HI + 1))
        self._INDEX = {site: i for i, site in enumerate(self._SITES)}

        interior, boundary = [], []
        for site in self._SITES:
            for neighbour in site.neighbours():
                if neighbour in self._INDEX:
                    if site < neighbour:
                        interior.append(Bond.between(site, neighbour))
                else:
                    boundary.append(Bond.between(site, neighbour))
        self._INTERIOR_BONDS = tuple(interior)
        self._BOUNDARY_BONDS = tuple(boundary)
        self._INNER_BOUNDARY = frozenset(site for site in self._SITES
                                         if any(n not in self._INDEX for n in site.neighbours()))

        self._CYCLE = self._trace_cycle()
        self._CYCLE_INDEX = {site: i for i, site in enumerate(self._CYCLE)}
        self._NEIGHBOURS = tuple(tuple(self._INDEX[n] for n in site.neighbours() if n in self._INDEX)
                                 for site in self._SITES)
        self._EXTERIOR = tuple(tuple(self._CYCLE_INDEX[n] for n in site.neighbours() if n not in self._INDEX)
                               for site in self._SITES)

    def __repr__(self) -> str:
        """Overriden __repr__ of Box class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": l={}, lo={}, hi={}".format(self._L, self._LO, self._HI)

    def __str__(self) -> str:
        """Overriden __str__ of Box class.

        :return: The __str__ string.
        """

        return "Box Lambda({}) with sites ({}..{})^2".format(self._L, self._LO, self._HI)

    def __eq__(self, other: "Box") -> bool:
        """Overriden __eq__ of Box class.

        Two boxes are equal if their side lengths are equal.

        :param other: The other Box instance to compare.
        :return: Whether the two instances are equal.
        """

        return isinstance(other, Box) and self._L == other._L

    def __hash__(self) -> int:
        return hash(("Box", self._L))

    # endregion Constructors

    def _trace_cycle(self) -> Tuple[Site, ...]:
        """Traces the exterior boundary counterclockwise.

        The traversal starts below the lexicographically smallest box site (lo, lo), runs
        along the bottom row to the right, up the right column, leftwards along the top row
        and down the left column.

        :return: The 4l exterior sites in cycle order.
        """

        lo, hi = self._LO, self._HI
        bottom = [Site(x1, lo - 1) for x1 in range(lo, hi + 1)]
        right = [Site(hi + 1, x2) for x2 in range(lo, hi + 1)]
        top = [Site(x1, hi + 1) for x1 in range(hi, lo - 1, -1)]
        left = [Site(lo - 1, x2) for x2 in range(hi, lo - 1, -1)]
        return tuple(bottom + right + top + left)

    # region Getter methods

    def get_side(self) -> int:
        return self._L

    def get_bounds(self) -> Tuple[int, int]:
        return self._LO, self._HI

    def get_sites(self) -> Tuple[Site, ...]:
        return self._SITES

    def get_size(self) -> int:
        return len(self._SITES)

    def get_interior_bonds(self) -> Tuple[Bond, ...]:
        return self._INTERIOR_BONDS

    def get_boundary_bonds(self) -> Tuple[Bond, ...]:
        return self._BOUNDARY_BONDS

    def get_inner_boundary(self) -> FrozenSet[Site]:
        return self._INNER_BOUNDARY

    def get_exterior_boundary(self) -> FrozenSet[Site]:
        return frozenset(self._CYCLE)

    def get_exterior_cycle(self) -> Tuple[Site, ...]:
        return self._CYCLE

    def get_neighbour_indices(self, index: int) -> Tuple[int, ...]:
        return self._NEIGHBOURS[index]

    def get_exterior_positions(self, index: int) -> Tuple[int, ...]:
        return self._EXTERIOR[index]

    def get_origin_index(self) -> int:
        return self._INDEX[Site(0, 0)]

    # endregion Getter methods

    # region Lookups

    def contains(self, site: Site) -> bool:
        return Site(*site) in self._INDEX

    def index_of(self, site: Site) -> int:
        """Gets the canonical index of a box site.

        :param site: The site.
        :return: The index into the canonical site order.
        """

        site = Site(*site)
        if site not in self._INDEX:
            raise ValueError("Site {} is not in {}".format(site, self))
        return self._INDEX[site]

    def site_of(self, index: int) -> Site:
        return self._SITES[index]

    def cycle_position(self, site: Site) -> int:
        """Gets the position of an exterior boundary site along the cycle.

        :param site: The exterior boundary site.
        :return: The cycle position.
        """

        site = Site(*site)
        if site not in self._CYCLE_INDEX:
            raise ValueError("Site {} is not on the exterior boundary of {}".format(site, self))
        return self._CYCLE_INDEX[site]

    def grid_position(self, site: Site) -> Tuple[int, int]:
        """Gets the (row, column) position of a box site in an l x l array.

        :param site: The box site.
        :return: The (x2 - lo, x1 - lo) position.
        """

        return site.x2 - self._LO, site.x1 - self._LO

    def is_boundary_bond(self, bond: Bond) -> bool:
        return (bond.a in self._INDEX) != (bond.b in self._INDEX)

    def is_interior_bond(self, bond: Bond) -> bool:
        return bond.a in self._INDEX and bond.b in self._INDEX

    def side_of(self, bond: Bond) -> int:
        """Gets the side of Q(Lambda(l)) on which the dual of a boundary bond lies.

        :param bond: A bond with exactly one endpoint in the box.
        :return: One of RIGHT, LEFT, TOP, BOTTOM.
        """

        outside = bond.b if bond.a in self._INDEX else bond.a
        if not self.is_boundary_bond(bond):
            raise ValueError("Bond {} is not a boundary bond of {}".format(bond, self))
        if outside.x1 > self._HI:
            return RIGHT
        if outside.x1 < self._LO:
            return LEFT
        if outside.x2 > self._HI:
            return TOP
        return BOTTOM

    def exterior_end(self, bond: Bond) -> Site:
        """Gets the endpoint of a boundary bond that lies outside the box.

        :param bond: A bond with exactly one endpoint in the box.
        :return: The exterior endpoint.
        """

        if not self.is_boundary_bond(bond):
            raise ValueError("Bond {} is not a boundary bond of {}".format(bond, self))
        return bond.b if bond.a in self._INDEX else bond.a

    def is_boundary_vertex(self, vertex: DualVertex) -> bool:
        """Checks if a dual vertex lies on the curve dQ(Lambda(l)).

        :param vertex: The dual vertex (i, j).
        :return: True if the point (i + 1/2, j + 1/2) is on the boundary of the square.
        """

        i, j = vertex
        lo, hi = self._LO - 1, self._HI
        inside_i, inside_j = lo <= i <= hi, lo <= j <= hi
        return (inside_j and i in (lo, hi)) or (inside_i and j in (lo, hi))

    def corner_site(self, horizontal_side: int, vertical_side: int) -> Site:
        """Gets the box site in the corner where a vertical and a horizontal side meet.

        :param horizontal_side: RIGHT or LEFT.
        :param vertical_side: TOP or BOTTOM.
        :return: The corner site.
        """

        x1 = self._HI if horizontal_side == RIGHT else self._LO
        x2 = self._HI if vertical_side == TOP else self._LO
        return Site(x1, x2)

    # endregion Lookups


@lru_cache(maxsize=None)
def build_box(l: int) -> Box:
    """Builds (or fetches the shared instance of) the box Lambda(l).

    :param l: The side length, at least 1.
    :return: The box.
    """

    return Box(l)


def exterior_boundary_cycle(box: Box) -> Tuple[Site, ...]:
    return box.get_exterior_cycle()


def cyclic_windows(box: Box, k: int) -> Iterator[Tuple[int, Tuple[Site, ...]]]:
    """Generates the 4l cyclic windows of length k along the exterior boundary cycle.

    :param box: The box.
    :param k: The window length, 1 <= k <= 4l.
    :return: Pairs (start position, window sites).
    """

    cycle = box.get_exterior_cycle()
    if not 1 <= k <= len(cycle):
        raise ValueError("Interval length must lie in [1, {}], got {}".format(len(cycle), k))
    wrapped = cycle + cycle[:k - 1]
    for start, window in enumerate(windowed(wrapped, k)):
        if start == len(cycle):
            break
        yield start, window


def intervals_of_length(box: Box, k: int) -> Tuple[BoundaryInterval, ...]:
    """Lists all contiguous arcs of length k of the exterior boundary cycle.

    :param box: The box.
    :param k: The interval length, 1 <= k <= 4l.
    :return: The 4l cyclic windows, ordered by starting position.
    """

    return tuple(BoundaryInterval(window, start) for start, window in cyclic_windows(box, k))


def interval_from_sites(box: Box, sites: Iterable[Site]) -> BoundaryInterval:
    """Orders a set of exterior boundary sites into an interval along the cycle.

    The sites must form a contiguous arc of the cycle (or all of it).

    :param box: The box.
    :param sites: The exterior boundary sites.
    :return: The interval, starting at the first site of the arc.
    """

    positions = sorted(box.cycle_position(s) for s in set(Site(*s) for s in sites))
    if not positions:
        return BoundaryInterval(())
    n = len(box.get_exterior_cycle())
    if len(positions) == n:
        return BoundaryInterval(box.get_exterior_cycle(), 0)

    # The arc starts right after the single gap in the cyclic sequence of positions
    occupied = set(positions)
    starts = [p for p in positions if (p - 1) % n not in occupied]
    if len(starts) != 1:
        raise ValueError("Sites do not form a contiguous arc of the boundary cycle")
    start = starts[0]
    cycle = box.get_exterior_cycle()
    return BoundaryInterval(tuple(cycle[(start + i) % n] for i in range(len(positions))), start)


if __name__ == '__main__':
    pass
