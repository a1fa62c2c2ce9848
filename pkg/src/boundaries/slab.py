#!/usr/bin/env python3
"""
Slab boundary condition: a +1 segment of relative length delta centred on the right side.

The field is +1 on the exterior sites y with y1 = floor(l/2) + 1 and -delta l/2 < y2 <= delta l/2,
and 0 everywhere else. At delta = 1 the whole right column is +1.

Usage:
    SlabBoundary(box, 0.5)
"""

from boundaries import BaseBoundary
import logging
import numpy as np

from config import get_log_level
from lattice import Box

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)


class SlabBoundary(BaseBoundary):
    """
    SlabBoundary class for the +1 slab on the right side of the box.

    Attributes
        _DELTA  The relative length of the slab, 0 < delta <= 1.
    """

    def __init__(self, box: Box, delta: float) -> None:
        """Initialisation of SlabBoundary class.

        :param box: The box.
        :param delta: The relative length of the slab, 0 < delta <= 1.
        """

        # Sanity check
        if not 0.0 < delta <= 1.0:
            _logger.error("SlabBoundary needs 0 < delta <= 1, delta=%s", delta)
            raise ValueError("Slab delta must lie in (0, 1], got {}".format(delta))

        l = box.get_side()
        _, hi = box.get_bounds()
        half = delta * l / 2.0
        values = np.array([1.0 if site.x1 == hi + 1 and -half < site.x2 <= half else 0.0
                           for site in box.get_exterior_cycle()])
        self._DELTA = float(delta)
        super().__init__(box, values, "slab:{}".format(self._DELTA))

    def get_delta(self) -> float:
        return self._DELTA


if __name__ == '__main__':
    pass
