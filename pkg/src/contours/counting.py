#!/usr/bin/env python3
"""
Exhaustive contour enumeration: contours through a fixed dual bond, and contours enclosing a site.

count_contours_through() walks closed dual-lattice trails that start with the given dual bond,
keeps each distinct edge set once and accepts it when it is the boundary of a set Theta with
Theta and its complement l1-connected. contours_enclosing() grows every l1-connected site set
of the box containing the site (each exactly once) and keeps the hole-free ones.

Usage:
    count_contours_through(dual_of(Bond.between(Site(0, 0), Site(1, 0))), 6)
    contours_enclosing(box, Site(0, 0))
    peierls_sum(box, beta, Site(0, 0))
"""

import logging
import math
from typing import FrozenSet, Iterator, List, Set

from config import get_log_level
from contours.geometry import Contour, edge_boundary, fill, is_contour
from exceptions import GuardError
from lattice import Box, DualBond, DualVertex, Site

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# Longest contour length enumerated through a fixed bond
MAX_COUNT_LENGTH = 14

_STEPS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def _trails(start: DualVertex, first: DualBond, m: int) -> Iterator[FrozenSet[DualBond]]:
    """Helper function to generate the edge sets of closed trails of length m starting with a bond.

    :param start: The endpoint of the first bond the trail starts (and ends) at.
    :param first: The first dual bond.
    :param m: The trail length.
    :return: The edge sets, possibly repeated.
    """

    u, v = first.endpoints()
    current = v if u == start else u
    used = {first}

    def _walk(vertex: DualVertex, length: int) -> Iterator[FrozenSet[DualBond]]:
        remaining = m - length
        if remaining == 0:
            if vertex == start:
                yield frozenset(used)
            return
        for d1, d2 in _STEPS:
            nxt = (vertex[0] + d1, vertex[1] + d2)
            # The walk must still be able to get back to the start
            if abs(nxt[0] - start[0]) + abs(nxt[1] - start[1]) > remaining - 1:
                continue
            edge = DualBond.from_endpoints(vertex, nxt)
            if edge in used:
                continue
            used.add(edge)
            yield from _walk(nxt, length + 1)
            used.discard(edge)

    yield from _walk(current, 1)


def count_contours_through(bond: DualBond, m: int) -> int:
    """Counts the contours of length m that contain a given dual bond.

    :param bond: The dual bond.
    :param m: The contour length, 1 <= m <= MAX_COUNT_LENGTH.
    :return: The exact count, never above 3^(m-1).
    """

    if m < 1:
        raise ValueError("Contour length must be positive, got {}".format(m))
    if m > MAX_COUNT_LENGTH:
        _logger.error("count_contours_through refused m=%d over the guard %d", m, MAX_COUNT_LENGTH)
        raise GuardError("Contour enumeration is limited to m <= {}, got {}".format(MAX_COUNT_LENGTH, m))
    if m % 2 == 1:
        return 0

    start = bond.endpoints()[0]
    candidates: Set[FrozenSet[DualBond]] = set(_trails(start, bond, m))
    count = sum(1 for edges in candidates if is_contour(d.bond for d in edges))
    _logger.debug("count_contours_through(%s, %d): %d closed trails, %d contours", bond, m, len(candidates), count)
    return count


def counting_bound(m: int) -> int:
    return 3 ** (m - 1)


def connected_sets_containing(box: Box, site: Site) -> Iterator[FrozenSet[Site]]:
    """Generates every l1-connected subset of the box that contains a site, each exactly once.

    :param box: The box.
    :param site: The site every subset must contain.
    :return: The subsets.
    """

    site = Site(*site)
    if not box.contains(site):
        raise ValueError("Site {} is not in {}".format(site, box))

    def _extend(current: List[Site], untried: List[Site], seen: FrozenSet[Site]) -> Iterator[FrozenSet[Site]]:
        untried = list(untried)
        while untried:
            added = untried.pop()
            grown = current + [added]
            yield frozenset(grown)
            fresh = [y for y in added.neighbours() if box.contains(y) and y not in seen]
            yield from _extend(grown, untried + fresh, seen | frozenset(fresh))

    yield from _extend([], [site], frozenset([site]))


def contours_enclosing(box: Box, site: Site) -> List[Contour]:
    """Gets every contour gamma with Theta(gamma) in the box and containing a site.

    :param box: The box.
    :param site: The site.
    :return: The contours, shortest first.
    """

    contours = [Contour(edge_boundary(theta), theta) for theta in connected_sets_containing(box, site)
                if fill(theta) == theta]
    contours.sort(key=lambda gamma: (len(gamma), gamma.get_bonds()))
    _logger.debug("contours_enclosing(%s, %s): %d contours", box, site, len(contours))
    return contours


def peierls_sum(box: Box, beta: float, site: Site) -> float:
    """Sums exp(-2 beta |gamma| / 9) over the contours in the box enclosing a site.

    :param box: The box.
    :param beta: The inverse temperature.
    :param site: The site.
    :return: The sum.
    """

    return math.fsum(math.exp(-2.0 * beta * len(gamma) / 9.0) for gamma in contours_enclosing(box, site))


if __name__ == '__main__':
    pass
