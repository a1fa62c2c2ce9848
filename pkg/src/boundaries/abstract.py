#!/usr/bin/env python3
"""
Abstract base classes (ABCs) for boundary conditions.

This script serves as an interface for documenting function implementation.

Usage:
    This script should not be used directly, other than its ABC functionalities.
"""

from abc import ABC, abstractmethod
import numpy as np
from typing import Any

from lattice import Box, BoundaryInterval, Site


class AbstractBoundary(ABC):
    """AbstractBoundary class as ABC for boundary fields omega on the exterior boundary of a box."""

    # region Getter methods

    @abstractmethod
    def get_box(self) -> Box:
        """Gets the box whose exterior boundary carries the field."""
        pass

    @abstractmethod
    def get_values(self) -> np.ndarray:
        """Gets the field values in exterior boundary cycle order."""
        pass

    @abstractmethod
    def get_value(self, site: Site) -> float:
        """Gets the field value at one exterior boundary site."""
        pass

    @abstractmethod
    def get_descriptor(self) -> str:
        """Gets the descriptor string the boundary can be rebuilt from."""
        pass

    @abstractmethod
    def get_site_fields(self) -> np.ndarray:
        """Gets, per box site, the sum of the field over its exterior neighbours."""
        pass

    # endregion Getter methods

    @abstractmethod
    def window_sums(self, k: int) -> np.ndarray:
        """Sums the field over every cyclic window of length k."""
        pass

    @abstractmethod
    def interval_sum(self, interval: BoundaryInterval) -> float:
        """Sums the field over an interval."""
        pass

    @abstractmethod
    def negated(self) -> Any:
        """Gets the boundary condition -omega."""
        pass

    @abstractmethod
    def to_text(self) -> str:
        """Serialises the field, one value per line in cycle order."""
        pass


if __name__ == '__main__':
    pass
