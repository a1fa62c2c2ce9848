#!/usr/bin/env python3
"""
Base class for flip-rate families.

Every family is a function of the flip energy change Delta H = H(sigma^x) - H(sigma) and
satisfies detailed balance q(Delta H) = exp(-beta Delta H) q(-Delta H). Since |Delta H| <= 8 on
the square lattice with boundary values in [-1, 1], each family has closed-form bounds.

Usage:
    This script should not be used directly, other than its base class functionalities.
"""

import logging
import numpy as np
from rates import AbstractRates

from config import get_log_level

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# Largest possible |Delta H|: 2 |sigma_x| (4 neighbours, each of modulus at most 1)
MAX_ENERGY_DELTA = 8.0


class BaseRates(AbstractRates):
    """
    BaseRates class as a generic flip-rate family at fixed inverse temperature.

    Attributes
        _BETA   The inverse temperature, beta >= 0.
    """

    # Define constants
    _KIND = "base"

    # region Constructors

    def __init__(self, beta: float) -> None:
        """Initialisation of BaseRates class.

        :param beta: The inverse temperature, beta >= 0.
        """

        # Sanity check
        beta = float(beta)
        if not np.isfinite(beta) or beta < 0.0:
            _logger.error("%s needs beta >= 0, beta=%s", self.__class__.__name__, beta)
            raise ValueError("Inverse temperature must be a finite non-negative number, got {}".format(beta))

        self._BETA = beta

    def __repr__(self) -> str:
        """Overriden __repr__ of BaseRates class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": kind={}, beta={}".format(self._KIND, self._BETA)

    def __str__(self) -> str:
        """Overriden __str__ of BaseRates class.

        :return: The __str__ string.
        """

        return "{} rates at beta={}".format(self._KIND, self._BETA)

    def __eq__(self, other: "BaseRates") -> bool:
        """Overriden __eq__ of BaseRates class.

        Two families are equal if they are of the same kind at the same inverse temperature.

        :param other: The other instance of the BaseRates class.
        :return: Whether the two instances are equal.
        """

        return isinstance(other, BaseRates) and self._KIND == other._KIND and self._BETA == other._BETA

    def __hash__(self) -> int:
        return hash((self._KIND, self._BETA))

    # endregion Constructors

    # region Getter methods

    def get_beta(self) -> float:
        return self._BETA

    def get_kind(self) -> str:
        return self._KIND

    # endregion Getter methods

    def detailed_balance_residual(self, delta_h: float) -> float:
        """Gets the relative violation of q(dH) = exp(-beta dH) q(-dH).

        :param delta_h: The energy change of the forward flip.
        :return: |q(dH) - exp(-beta dH) q(-dH)| / q(dH).
        """

        forward = self.rate(delta_h)
        backward = self.rate(-delta_h)
        return abs(forward - np.exp(-self._BETA * delta_h) * backward) / forward


if __name__ == '__main__':
    pass
