#!/usr/bin/env python3
"""
Plus boundary with free corners.

On each side of the box, the k = ceil(eps l) exterior sites nearest each end of that side are
set to 0 and the rest stay +1. Sides shorter than 2k are free altogether.

Usage:
    CornersBoundary(box, 0.25)
"""

from boundaries import BaseBoundary
import logging
import math
import numpy as np

from config import get_log_level
from lattice import Box

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)


class CornersBoundary(BaseBoundary):
    """
    CornersBoundary class for the plus boundary with freed corner segments.

    Attributes
        _EPS    The relative length of each freed segment, 0 <= eps <= 1.
    """

    def __init__(self, box: Box, eps: float) -> None:
        """Initialisation of CornersBoundary class.

        :param box: The box.
        :param eps: The relative length of each freed segment, 0 <= eps <= 1.
        """

        # Sanity check
        if not 0.0 <= eps <= 1.0:
            _logger.error("CornersBoundary needs 0 <= eps <= 1, eps=%s", eps)
            raise ValueError("Corner fraction must lie in [0, 1], got {}".format(eps))

        l = box.get_side()
        k = math.ceil(eps * l)
        # The cycle is four sides of l sites each; position within a side is i % l
        offsets = np.arange(4 * l) % l
        free = (offsets < k) | (offsets >= l - k)
        self._EPS = float(eps)
        super().__init__(box, np.where(free, 0.0, 1.0), "corners:{}".format(self._EPS))

    def get_eps(self) -> float:
        return self._EPS


if __name__ == '__main__':
    pass
