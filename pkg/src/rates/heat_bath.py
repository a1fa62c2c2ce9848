#!/usr/bin/env python3
"""
Heat-bath flip rates q = 1 / (1 + exp(beta Delta H)).

Usage:
    HeatBathRates(beta).rate(delta_h)
"""

import math
import numpy as np
from rates import BaseRates
from rates.base import MAX_ENERGY_DELTA
from scipy.special import expit


class HeatBathRates(BaseRates):
    """HeatBathRates class, bounded by 1/(1 + exp(8 beta)) <= q <= 1/(1 + exp(-8 beta))."""

    _KIND = "heat-bath"

    def q_lower(self) -> float:
        return float(expit(-self._BETA * MAX_ENERGY_DELTA))

    def q_upper(self) -> float:
        return float(expit(self._BETA * MAX_ENERGY_DELTA))

    def rate(self, delta_h: float) -> float:
        x = -self._BETA * delta_h
        # Logistic function without overflow in either tail
        if x >= 0.0:
            return 1.0 / (1.0 + math.exp(-x))
        z = math.exp(x)
        return z / (1.0 + z)

    def rates(self, delta_h: np.ndarray) -> np.ndarray:
        return expit(-self._BETA * np.asarray(delta_h, dtype=float))


if __name__ == '__main__':
    pass
