#!/usr/bin/env python3
"""
Numeric checkers for the contour energy estimates.

Each checker evaluates both sides of an inequality on a concrete (contours, sigma, omega) and
returns one LemmaReport per inequality. A report that does not pass is an inequality failure;
inputs that do not meet the hypothesis of the estimate raise HypothesisError instead.

Non-crossing estimates (single non-crossing (epsilon)-contour gamma):
    interior-length     |gamma - dQ| >= |gamma|/2 + |gamma - (dQ u gamma_)|/2
    energy-lower        Delta/2 >= |gamma|/2 + |gamma - (dQ u gamma_)|/2 - eps sum_{V_ex(gamma)} omega
    boundary-energy     Delta/2 >= |gamma_| - eps sum_{I(gamma)} omega >= 0
Several contours with pairwise disjoint Theta:
    linear-to-length    Delta/2 >= c1 l - c2  implies  Delta/2 >= c1/(c1 + 8) sum |gamma_j| - c2
    interval            under (w2) and an interval I covering every I(gamma_j):
                        Delta/2 >= eps_nc max(l, sum |gamma_j|) - c
Single contours:
    single-side         touching exactly one side: Delta >= #dual bonds parallel to the other pair of sides
    center              Theta contains the origin and |gamma| < 2l: Delta >= 2|gamma|/9

Usage:
    for report in check_lemma31([gamma], sigma, omega, box, "a"): ...
    check_lemma32(gamma, sigma, omega, box, "b")
"""

import logging
from itertools import combinations
from typing import Dict, NamedTuple, Optional, Sequence, Tuple

from boundaries import BaseBoundary
from config import get_log_level
from contours.energy import delta_H
from contours.geometry import Contour, Crossing, decompose_noncrossing, epsilon_contours_at, is_crossing
from exceptions import HypothesisError
from lattice import LEFT, RIGHT, BoundaryInterval, Box, Site
from mixing import validate_w2

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# Floating-point slack when comparing the two sides
TOLERANCE = 1e-9


class LemmaReport(NamedTuple):
    """Both sides of one checked inequality, lhs >= rhs."""

    check: str
    lhs: float
    rhs: float
    passes: bool
    detail: Dict[str, float]

    def to_record(self) -> dict:
        record = {"check": self.check, "lhs": self.lhs, "rhs": self.rhs, "passes": self.passes}
        record.update(self.detail)
        return record


def _report(check: str, lhs: float, rhs: float, **detail: float) -> LemmaReport:
    passes = lhs >= rhs - TOLERANCE
    if not passes:
        _logger.warning("Inequality %s fails: %s < %s (%s)", check, lhs, rhs, detail)
    return LemmaReport(check, float(lhs), float(rhs), passes, detail)


def lemma31_constant(delta_w2: float, delta_1: Optional[float] = None) -> float:
    """Gets eps_nc = c1 / (c1 + 8) with c1 = min((1 - delta_1) delta_w2, (delta_1 - delta_w2) delta_w2).

    :param delta_w2: The (w2) constant, 0 < delta_w2 < 1.
    :param delta_1: A fraction in (delta_w2, 1); the midpoint if None.
    :return: The constant.
    """

    if not 0.0 < delta_w2 < 1.0:
        raise ValueError("delta_w2 must lie in (0, 1), got {}".format(delta_w2))
    delta_1 = (delta_w2 + 1.0) / 2.0 if delta_1 is None else delta_1
    if not delta_w2 < delta_1 < 1.0:
        raise ValueError("delta_1 must lie in (delta_w2, 1), got {}".format(delta_1))
    c1 = min((1.0 - delta_1) * delta_w2, (delta_1 - delta_w2) * delta_w2)
    return c1 / (c1 + 8.0)


# region Hypotheses

def _require_contour_at(gamma: Contour, sigma: int, box: Box) -> int:
    """Helper function to check that gamma is an (epsilon)-contour at sigma.

    :param gamma: The contour, carrying its sign.
    :param sigma: The configuration.
    :param box: The box.
    :return: The sign epsilon.
    """

    epsilon = gamma.get_sign()
    if epsilon is None:
        raise HypothesisError("Contour carries no sign; use Contour.with_sign()")
    if gamma not in epsilon_contours_at(sigma, epsilon, box):
        raise HypothesisError("{} is not an ({:+d})-contour at the given configuration".format(gamma, epsilon))
    return epsilon


def _require_common_sign(gammas: Sequence[Contour], sigma: int, box: Box) -> int:
    if not gammas:
        raise HypothesisError("At least one contour is needed")
    signs = {_require_contour_at(gamma, sigma, box) for gamma in gammas}
    if len(signs) != 1:
        raise HypothesisError("Contours must share one sign, got {}".format(sorted(signs)))
    for a, b in combinations(gammas, 2):
        if a.get_theta() & b.get_theta():
            raise HypothesisError("Contours must enclose pairwise disjoint site sets")
    return signs.pop()


def _require_noncrossing(gamma: Contour, box: Box) -> None:
    crossing = is_crossing(gamma, box)
    if crossing != Crossing.NONE:
        raise HypothesisError("Contour is {} crossing".format(crossing.value))

# endregion Hypotheses


def check_noncrossing_energy(gamma: Contour, sigma: int, omega: BaseBoundary, box: Box) -> Tuple[LemmaReport, ...]:
    """Checks the three estimates for a single non-crossing (epsilon)-contour.

    :param gamma: The contour, carrying its sign.
    :param sigma: The configuration it was read from.
    :param omega: The boundary field.
    :param box: The box.
    :return: The interior-length, energy-lower and boundary-energy reports.
    """

    epsilon = _require_contour_at(gamma, sigma, box)
    _require_noncrossing(gamma, box)
    decomposition = decompose_noncrossing(gamma, box)

    half_delta = delta_H([gamma], sigma, omega, box) / 2.0
    inner = gamma.inner_part(box)
    rest = len(inner - decomposition.get_underline())
    exterior_sum = sum(omega.get_value(y) for y in gamma.exterior_sites(box))
    interval_sum = sum(omega.get_value(y) for y in decomposition.get_interval())
    boundary_rhs = len(decomposition.get_underline()) - epsilon * interval_sum

    return (
        _report("interior-length", len(inner), len(gamma) / 2.0 + rest / 2.0, rest=rest),
        _report("energy-lower", half_delta, len(gamma) / 2.0 + rest / 2.0 - epsilon * exterior_sum,
                exterior_sum=exterior_sum),
        _report("boundary-energy", half_delta, boundary_rhs, interval_sum=interval_sum),
        _report("boundary-energy-nonnegative", boundary_rhs, 0.0),
    )


def check_multi_contour_energy(gammas: Sequence[Contour], sigma: int, omega: BaseBoundary, box: Box,
                               c1: float, c2: float) -> Tuple[LemmaReport, ...]:
    """Checks that a linear-in-l energy bound upgrades to a bound linear in the total length.

    :param gammas: The (epsilon)-contours, with pairwise disjoint Theta.
    :param sigma: The configuration.
    :param omega: The boundary field.
    :param box: The box.
    :param c1: The constant c1 >= 0 of the assumed bound.
    :param c2: The constant c2 >= 0 of the assumed bound.
    :return: The linear-to-length report.
    """

    if c1 < 0 or c2 < 0:
        raise ValueError("Constants c1, c2 must be non-negative, got {}, {}".format(c1, c2))
    _require_common_sign(gammas, sigma, box)
    half_delta = delta_H(gammas, sigma, omega, box) / 2.0
    l = box.get_side()
    if half_delta < c1 * l - c2 - TOLERANCE:
        raise HypothesisError("Assumed bound fails: Delta/2 = {} < c1 l - c2 = {}".format(half_delta, c1 * l - c2))

    total = sum(len(gamma) for gamma in gammas)
    return (_report("linear-to-length", half_delta, c1 / (c1 + 8.0) * total - c2, total_length=total),)


def check_interval_energy(gammas: Sequence[Contour], sigma: int, omega: BaseBoundary, box: Box,
                          delta_w2: float, interval: BoundaryInterval, c: float,
                          delta_1: Optional[float] = None) -> Tuple[LemmaReport, ...]:
    """Checks the energy bound for non-crossing contours whose intervals fill a long interval.

    Hypotheses: omega satisfies (w2) at delta_w2; the intervals I(gamma_j) are pairwise disjoint
    and contained in the interval I; delta_w2 l <= |I| <= sum |gamma_j_| + c.

    :param gammas: The non-crossing (epsilon)-contours, with pairwise disjoint Theta.
    :param sigma: The configuration.
    :param omega: The boundary field.
    :param box: The box.
    :param delta_w2: The (w2) constant.
    :param interval: The interval I.
    :param c: The constant c >= 0.
    :param delta_1: The fraction used in the constant; the midpoint of (delta_w2, 1) if None.
    :return: The interval report.
    """

    if c < 0:
        raise ValueError("Constant c must be non-negative, got {}".format(c))
    _require_common_sign(gammas, sigma, box)
    for gamma in gammas:
        _require_noncrossing(gamma, box)
    if not validate_w2(omega, delta_w2).passes:
        raise HypothesisError("Boundary field does not satisfy (w2) at delta_w2={}".format(delta_w2))

    decompositions = [decompose_noncrossing(gamma, box) for gamma in gammas]
    intervals = [d.get_interval().as_set() for d in decompositions]
    for a, b in combinations(intervals, 2):
        if a & b:
            raise HypothesisError("Intervals I(gamma_j) must be pairwise disjoint")
    covered = frozenset().union(*intervals)
    if not covered <= interval.as_set():
        raise HypothesisError("The interval does not contain every I(gamma_j)")
    l = box.get_side()
    underline_total = sum(len(d.get_underline()) for d in decompositions)
    if not delta_w2 * l - TOLERANCE <= len(interval) <= underline_total + c + TOLERANCE:
        raise HypothesisError("Interval length {} outside [delta_w2 l, sum |gamma_j_| + c] = [{}, {}]"
                              .format(len(interval), delta_w2 * l, underline_total + c))

    half_delta = delta_H(gammas, sigma, omega, box) / 2.0
    total = sum(len(gamma) for gamma in gammas)
    eps_nc = lemma31_constant(delta_w2, delta_1)
    return (_report("interval", half_delta, eps_nc * max(l, total) - c, eps_nc=eps_nc, total_length=total),)


def check_single_side_energy(gamma: Contour, sigma: int, omega: BaseBoundary, box: Box) -> Tuple[LemmaReport, ...]:
    """Checks Delta >= #dual bonds parallel to the untouched pair of sides, for a contour touching one side.

    :param gamma: The (epsilon)-contour, carrying its sign.
    :param sigma: The configuration.
    :param omega: The boundary field.
    :param box: The box.
    :return: The single-side report.
    """

    _require_contour_at(gamma, sigma, box)
    sides = gamma.sides_touched(box)
    if len(sides) != 1:
        raise HypothesisError("Contour touches {} sides; exactly one is required".format(len(sides)))
    side = next(iter(sides))
    # Horizontal dual bonds cannot lie on the left or right side
    count = gamma.count_horizontal() if side in (RIGHT, LEFT) else gamma.count_vertical()
    return (_report("single-side", delta_H([gamma], sigma, omega, box), count, side=side),)


def check_center_energy(gamma: Contour, sigma: int, omega: BaseBoundary, box: Box) -> Tuple[LemmaReport, ...]:
    """Checks Delta >= 2|gamma|/9 for a short contour around the origin.

    :param gamma: The (epsilon)-contour, carrying its sign.
    :param sigma: The configuration.
    :param omega: The boundary field.
    :param box: The box.
    :return: The center report.
    """

    _require_contour_at(gamma, sigma, box)
    if Site(0, 0) not in gamma.get_theta():
        raise HypothesisError("Theta(gamma) does not contain the origin")
    if len(gamma) >= 2 * box.get_side():
        raise HypothesisError("Contour length {} is not below 2l = {}".format(len(gamma), 2 * box.get_side()))
    return (_report("center", delta_H([gamma], sigma, omega, box), 2.0 * len(gamma) / 9.0),)


def check_lemma31(gammas: Sequence[Contour], sigma: int, omega: BaseBoundary, box: Box, case: str,
                  **params) -> Tuple[LemmaReport, ...]:
    """Dispatches to the non-crossing (a), multi-contour (b) and interval (c) checkers.

    :param gammas: The contours (exactly one for case a).
    :param sigma: The configuration.
    :param omega: The boundary field.
    :param box: The box.
    :param case: "a", "b" or "c".
    :param params: c1, c2 for case b; delta_w2, interval, c (and optionally delta_1) for case c.
    :return: The reports.
    """

    if case == "a":
        if len(gammas) != 1:
            raise HypothesisError("Case a takes exactly one contour, got {}".format(len(gammas)))
        return check_noncrossing_energy(gammas[0], sigma, omega, box)
    if case == "b":
        return check_multi_contour_energy(gammas, sigma, omega, box, params["c1"], params["c2"])
    if case == "c":
        return check_interval_energy(gammas, sigma, omega, box, params["delta_w2"], params["interval"],
                                     params.get("c", 0.0), params.get("delta_1"))
    raise ValueError("Unknown case '{}', expected a, b or c".format(case))


def check_lemma32(gamma: Contour, sigma: int, omega: BaseBoundary, box: Box, part: str) -> Tuple[LemmaReport, ...]:
    """Dispatches to the single-side (a) and center (b) checkers.

    :param gamma: The contour.
    :param sigma: The configuration.
    :param omega: The boundary field.
    :param box: The box.
    :param part: "a" or "b".
    :return: The reports.
    """

    if part == "a":
        return check_single_side_energy(gamma, sigma, omega, box)
    if part == "b":
        return check_center_energy(gamma, sigma, omega, box)
    raise ValueError("Unknown part '{}', expected a or b".format(part))


if __name__ == '__main__':
    pass
