#!/usr/bin/env python3
"""
Constant boundary conditions: plus, minus and free.

Usage:
    PlusBoundary(box), MinusBoundary(box), FreeBoundary(box)
"""

from boundaries import BaseBoundary
import numpy as np

from lattice import Box


class ConstantBoundary(BaseBoundary):
    """ConstantBoundary class for fields taking the same value on every exterior boundary site."""

    # Define constants
    _VALUE = 0.0
    _KIND = "constant"

    def __init__(self, box: Box) -> None:
        """Initialisation of ConstantBoundary class.

        :param box: The box.
        """

        super().__init__(box, np.full(len(box.get_exterior_cycle()), self._VALUE), self._KIND)


class PlusBoundary(ConstantBoundary):
    """The pure boundary omega = +1."""

    _VALUE = 1.0
    _KIND = "plus"


class MinusBoundary(ConstantBoundary):
    """The pure boundary omega = -1."""

    _VALUE = -1.0
    _KIND = "minus"


class FreeBoundary(ConstantBoundary):
    """The free boundary omega = 0."""

    _VALUE = 0.0
    _KIND = "free"


if __name__ == '__main__':
    pass
