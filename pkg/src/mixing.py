#!/usr/bin/env python3
"""
Mixing conditions on boundary fields and the reduction between them.

A field omega is tested on cyclic windows I of the exterior boundary cycle:
    validate_w1     |sum_I omega| <= delta |I| for every window with |I| = l
    validate_w1a    the same for every window with |I| >= l
    validate_w2     the same for every window with |I| >= delta_w2 l (length floor configurable)
    validate_hy     |sum_I omega| <= delta l / 2 for every window of every length

reduce_delta_chain() turns a (w1) constant into the (w1a) and (w2) constants that it implies.

Usage:
    report = validate_w1(omega, 0.5)
    if not report.passes: ...
    delta_w1a, delta_w2 = reduce_delta_chain(0.5)
"""

import logging
import math
import numpy as np
from typing import Iterable, NamedTuple, Optional, Tuple

from boundaries import BaseBoundary
from config import get_log_level
from lattice import BoundaryInterval

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# Floating-point slack when comparing a worst ratio against its threshold
_TOLERANCE = 1e-12


class MixingReport(NamedTuple):
    """Outcome of one mixing check.

    worst_ratio is |sum_I omega| / |I| for the length-proportional conditions and
    |sum_I omega| / (l/2) for validate_hy, maximised over the tested windows.
    """

    condition: str
    delta_requested: float
    min_interval_length: int
    max_interval_length: int
    windows_tested: int
    worst_interval: BoundaryInterval
    worst_sum: float
    worst_ratio: float
    passes: bool

    def to_record(self) -> dict:
        return {"condition": self.condition, "delta": self.delta_requested,
                "min_interval_length": self.min_interval_length, "max_interval_length": self.max_interval_length,
                "windows_tested": self.windows_tested, "worst_start": self.worst_interval.get_start(),
                "worst_length": len(self.worst_interval), "worst_sum": self.worst_sum,
                "worst_ratio": self.worst_ratio, "passes": self.passes}


def _check_delta(name: str, delta: float) -> None:
    if not 0.0 < delta < 1.0:
        _logger.error("%s needs 0 < delta < 1, delta=%s", name, delta)
        raise ValueError("{} needs delta in (0, 1), got {}".format(name, delta))


def _scan(omega: BaseBoundary, condition: str, delta: float, lengths: Iterable[int],
          scale: Optional[float] = None) -> MixingReport:
    """Helper function to find the worst window over a range of lengths.

    :param omega: The boundary field.
    :param condition: The condition name for the report.
    :param delta: The threshold on the ratio.
    :param lengths: The window lengths to test.
    :param scale: Fixed normaliser for the window sums; the window length if None.
    :return: The report. The worst window is the first one reaching the maximum ratio.
    """

    box = omega.get_box()
    cycle = box.get_exterior_cycle()
    n = len(cycle)
    lengths = [k for k in lengths if 1 <= k <= n]
    worst = (-1.0, 0.0, 1, 0)  # ratio, sum, length, start
    tested = 0
    for k in lengths:
        sums = omega.window_sums(k)
        ratios = np.abs(sums) / (scale if scale is not None else k)
        start = int(np.argmax(ratios))
        tested += n
        if ratios[start] > worst[0]:
            worst = (float(ratios[start]), float(sums[start]), k, start)

    ratio, total, k, start = worst
    interval = BoundaryInterval(tuple(cycle[(start + i) % n] for i in range(k)), start) if lengths \
        else BoundaryInterval(())
    ratio = max(ratio, 0.0)
    passes = ratio <= delta + _TOLERANCE
    _logger.debug("%s at delta=%s on %s: worst ratio %s over %d windows", condition, delta, box, ratio, tested)
    return MixingReport(condition, float(delta), min(lengths) if lengths else 0, max(lengths) if lengths else 0,
                        tested, interval, total, ratio, passes)


def validate_w1(omega: BaseBoundary, delta: float) -> MixingReport:
    """Checks |sum_I omega| <= delta |I| over every cyclic window with |I| = l.

    :param omega: The boundary field.
    :param delta: The mixing constant, 0 < delta < 1.
    :return: The report, with the worst window.
    """

    _check_delta("validate_w1", delta)
    l = omega.get_box().get_side()
    return _scan(omega, "w1", delta, [l])


def validate_w1a(omega: BaseBoundary, delta_w1a: float) -> MixingReport:
    """Checks |sum_I omega| <= delta_w1a |I| over every cyclic window with |I| >= l.

    :param omega: The boundary field.
    :param delta_w1a: The mixing constant, 0 < delta_w1a < 1.
    :return: The report, with the worst window.
    """

    _check_delta("validate_w1a", delta_w1a)
    l = omega.get_box().get_side()
    return _scan(omega, "w1a", delta_w1a, range(l, 4 * l + 1))


def validate_w2(omega: BaseBoundary, delta_w2: float, min_length: Optional[int] = None) -> MixingReport:
    """Checks |sum_I omega| <= delta_w2 |I| over every cyclic window with |I| >= delta_w2 l.

    :param omega: The boundary field.
    :param delta_w2: The mixing constant, 0 < delta_w2 < 1.
    :param min_length: Overrides the length floor ceil(delta_w2 l); passing l gives the (w1a) check.
    :return: The report, with the worst window.
    """

    _check_delta("validate_w2", delta_w2)
    l = omega.get_box().get_side()
    floor = max(1, math.ceil(delta_w2 * l - _TOLERANCE)) if min_length is None else max(1, int(min_length))
    return _scan(omega, "w2", delta_w2, range(floor, 4 * l + 1))


def validate_hy(omega: BaseBoundary, delta: float) -> MixingReport:
    """Checks |sum_I omega| <= delta l / 2 over every cyclic window of every length.

    :param omega: The boundary field.
    :param delta: The mixing constant, 0 < delta < 1.
    :return: The report; its ratios are normalised by l/2.
    """

    _check_delta("validate_hy", delta)
    l = omega.get_box().get_side()
    return _scan(omega, "hy", delta, range(1, 4 * l + 1), scale=l / 2.0)


def critical_root(delta_w1a: float) -> float:
    """Gets the positive root r of r^2 + r = 1 + delta_w1a.

    :param delta_w1a: The (w1a) constant.
    :return: The root; any delta_w2 in (r, 1) satisfies the reduction inequality strictly.
    """

    return (-1.0 + math.sqrt(5.0 + 4.0 * delta_w1a)) / 2.0


def chain_inequality_holds(delta_w1a: float, delta_w2: float) -> bool:
    """Checks delta_w1a + (1 + delta_w1a)(1 - delta_w2)/delta_w2 < delta_w2 (strictly).

    :param delta_w1a: The (w1a) constant.
    :param delta_w2: The candidate (w2) constant.
    :return: Whether the inequality holds.
    """

    if not 0.0 < delta_w2 <= 1.0:
        return False
    return delta_w1a + (1.0 + delta_w1a) * (1.0 - delta_w2) / delta_w2 < delta_w2


def reduce_delta_chain(delta: float) -> Tuple[float, float]:
    """Derives the (w1a) and (w2) constants implied by a (w1) constant.

    delta_w1a = (1 + delta)/2, and delta_w2 is the midpoint between the critical root of
    r^2 + r = 1 + delta_w1a and 1.

    :param delta: The (w1) constant, 0 <= delta < 1.
    :return: (delta_w1a, delta_w2).
    """

    # Sanity check
    if not 0.0 <= delta < 1.0:
        _logger.error("reduce_delta_chain needs 0 <= delta < 1, delta=%s", delta)
        raise ValueError("The reduction chain needs delta in [0, 1), got {}".format(delta))

    delta_w1a = (1.0 + delta) / 2.0
    delta_w2 = (critical_root(delta_w1a) + 1.0) / 2.0
    if not chain_inequality_holds(delta_w1a, delta_w2):
        raise ValueError("No feasible delta_w2 for delta={}".format(delta))
    return delta_w1a, delta_w2


if __name__ == '__main__':
    pass
