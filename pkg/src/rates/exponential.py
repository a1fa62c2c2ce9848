#!/usr/bin/env python3
"""
Exponential flip rates q = exp(-(beta/2) Delta H).

Usage:
    ExponentialRates(beta).rate(delta_h)
"""

import math
import numpy as np
from rates import BaseRates
from rates.base import MAX_ENERGY_DELTA


class ExponentialRates(BaseRates):
    """ExponentialRates class, bounded by exp(-4 beta) <= q <= exp(4 beta)."""

    _KIND = "exponential"

    def q_lower(self) -> float:
        return math.exp(-self._BETA * MAX_ENERGY_DELTA / 2.0)

    def q_upper(self) -> float:
        return math.exp(self._BETA * MAX_ENERGY_DELTA / 2.0)

    def rate(self, delta_h: float) -> float:
        return math.exp(-0.5 * self._BETA * delta_h)

    def rates(self, delta_h: np.ndarray) -> np.ndarray:
        return np.exp(-0.5 * self._BETA * np.asarray(delta_h, dtype=float))


if __name__ == '__main__':
    pass
