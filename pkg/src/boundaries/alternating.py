#!/usr/bin/env python3
"""
Alternating boundary condition: +1, -1, +1, ... along the exterior boundary cycle.

The cycle has even length 4l, so every window of even length sums to 0 and every window of
odd length sums to +1 or -1.

Usage:
    AlternatingBoundary(box)
"""

from boundaries import BaseBoundary
import numpy as np

from lattice import Box


class AlternatingBoundary(BaseBoundary):
    """AlternatingBoundary class, starting with +1 at cycle position 0."""

    def __init__(self, box: Box) -> None:
        n = len(box.get_exterior_cycle())
        super().__init__(box, np.where(np.arange(n) % 2 == 0, 1.0, -1.0), "alternating")


if __name__ == '__main__':
    pass
