#!/usr/bin/env python3
"""
Metropolis flip rates q = min(1, exp(-beta Delta H)).

Usage:
    MetropolisRates(beta).rate(delta_h)
"""

import math
import numpy as np
from rates import BaseRates
from rates.base import MAX_ENERGY_DELTA


class MetropolisRates(BaseRates):
    """MetropolisRates class, bounded by exp(-8 beta) <= q <= 1."""

    _KIND = "metropolis"

    def q_lower(self) -> float:
        return math.exp(-self._BETA * MAX_ENERGY_DELTA)

    def q_upper(self) -> float:
        return 1.0

    def rate(self, delta_h: float) -> float:
        return math.exp(min(0.0, -self._BETA * delta_h))

    def rates(self, delta_h: np.ndarray) -> np.ndarray:
        return np.exp(np.minimum(0.0, -self._BETA * np.asarray(delta_h, dtype=float)))


if __name__ == '__main__':
    pass
