#!/usr/bin/env python3
"""
Random i.i.d. boundary condition with a prescribed mean.

Each omega_y is +1 with probability (1 + m)/2 and -1 otherwise, drawn from a seeded stream so
that the same (mean, seed) always gives the same field.

Usage:
    IIDBoundary(box, mean=0.0, seed=7)
"""

from boundaries import BaseBoundary
import logging
import numpy as np

from config import get_log_level
from lattice import Box
from utils import make_rng

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)


class IIDBoundary(BaseBoundary):
    """
    IIDBoundary class for two-point i.i.d. boundary fields.

    Attributes
        _MEAN   The mean m of each boundary value, -1 <= m <= 1.
        _SEED   The seed of the random stream.
    """

    def __init__(self, box: Box, mean: float, seed: int) -> None:
        """Initialisation of IIDBoundary class.

        :param box: The box.
        :param mean: The mean m of each boundary value, -1 <= m <= 1.
        :param seed: The seed of the random stream.
        """

        # Sanity check
        if not -1.0 <= mean <= 1.0:
            _logger.error("IIDBoundary needs -1 <= mean <= 1, mean=%s", mean)
            raise ValueError("Boundary mean must lie in [-1, 1], got {}".format(mean))

        rng = make_rng(seed)
        draws = rng.random(len(box.get_exterior_cycle()))
        values = np.where(draws < (1.0 + mean) / 2.0, 1.0, -1.0)
        self._MEAN = float(mean)
        self._SEED = int(seed)
        super().__init__(box, values, "iid:{}:{}".format(self._MEAN, self._SEED))

    def get_mean(self) -> float:
        return self._MEAN

    def get_seed(self) -> int:
        return self._SEED


if __name__ == '__main__':
    pass
