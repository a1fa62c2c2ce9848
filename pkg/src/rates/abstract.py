#!/usr/bin/env python3
"""
Abstract base classes (ABCs) for single-spin flip-rate families.

This script serves as an interface for documenting function implementation.

Usage:
    This script should not be used directly, other than its ABC functionalities.
"""

from abc import ABC, abstractmethod
import numpy as np


class AbstractRates(ABC):
    """AbstractRates class as ABC for flip rates q(x, sigma, omega) written as functions of the energy change."""

    # region Getter methods

    @abstractmethod
    def get_beta(self) -> float:
        """Gets the inverse temperature."""
        pass

    @abstractmethod
    def get_kind(self) -> str:
        """Gets the family name used on the command line."""
        pass

    @abstractmethod
    def q_lower(self) -> float:
        """Gets the certified lower bound on every rate of the family at this temperature."""
        pass

    @abstractmethod
    def q_upper(self) -> float:
        """Gets the certified upper bound on every rate of the family at this temperature."""
        pass

    # endregion Getter methods

    @abstractmethod
    def rate(self, delta_h: float) -> float:
        """Gets the rate of a flip whose energy change is delta_h."""
        pass

    @abstractmethod
    def rates(self, delta_h: np.ndarray) -> np.ndarray:
        """Vectorised rate() over an array of energy changes."""
        pass


if __name__ == '__main__':
    pass
