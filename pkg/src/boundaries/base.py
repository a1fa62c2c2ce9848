#!/usr/bin/env python3
"""
Base class for boundary conditions.

This script standardises the storage, validation and window arithmetic of a boundary field.

Usage:
    This script should not be used directly, other than its base class functionalities.
"""

from boundaries import AbstractBoundary
import logging
import numpy as np
from typing import Sequence, Union

from config import get_log_level
from lattice import Box, BoundaryInterval, Site
from utils import format_float

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# Rounding slack tolerated when checking values against [-1, 1]
_RANGE_TOLERANCE = 1e-12


class BaseBoundary(AbstractBoundary):
    """
    BaseBoundary class as a generic boundary field omega on the exterior boundary of a box.

    Values are stored once, in exterior boundary cycle order, as a read-only array. The per-site
    exterior field (the sum of omega over the exterior neighbours of each box site) is derived
    at construction since every energy evaluation reads it.

    Attributes
        _BOX            The box whose exterior boundary carries the field.
        _VALUES         The field values in cycle order.
        _DESCRIPTOR     The descriptor string the field can be rebuilt from.
        _SITE_FIELDS    Per box site, the sum of the field over its exterior neighbours.
    """

    # region Constructors

    def __init__(self, box: Box, values: Union[Sequence[float], np.ndarray], descriptor: str) -> None:
        """Initialisation of BaseBoundary class.

        :param box: The box.
        :param values: The field values in exterior boundary cycle order.
        :param descriptor: The descriptor string the field can be rebuilt from.
        """

        values = np.array(values, dtype=float).reshape(-1)
        expected = len(box.get_exterior_cycle())

        # Sanity check
        if values.shape[0] != expected:
            _logger.error("%s expects %d values for %s, got %d", self.__class__.__name__, expected, box,
                          values.shape[0])
            raise ValueError("Boundary of {} needs {} values, got {}".format(box, expected, values.shape[0]))
        if not np.all(np.isfinite(values)):
            raise ValueError("Boundary values must be finite")
        if np.any(np.abs(values) > 1.0 + _RANGE_TOLERANCE):
            bad = values[np.argmax(np.abs(values))]
            _logger.error("%s value %s lies outside [-1, 1]", self.__class__.__name__, bad)
            raise ValueError("Boundary value {} lies outside [-1, 1]".format(bad))

        values = np.clip(values, -1.0, 1.0)
        values.flags.writeable = False
        self._BOX = box
        self._VALUES = values
        self._DESCRIPTOR = descriptor

        fields = np.zeros(box.get_size(), dtype=float)
        for index in range(box.get_size()):
            positions = box.get_exterior_positions(index)
            if positions:
                fields[index] = values[list(positions)].sum()
        fields.flags.writeable = False
        self._SITE_FIELDS = fields

    def __repr__(self) -> str:
        """Overriden __repr__ of BaseBoundary class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": box={}, descriptor={}, values={}" \
            .format(repr(self._BOX), self._DESCRIPTOR, self._VALUES.tolist())

    def __str__(self) -> str:
        """Overriden __str__ of BaseBoundary class.

        :return: The __str__ string.
        """

        return "{} '{}' on {}".format(self.__class__.__name__, self._DESCRIPTOR, self._BOX)

    def __eq__(self, other: "BaseBoundary") -> bool:
        """Overriden __eq__ of BaseBoundary class.

        Two boundaries are equal if they live on the same box and carry identical values,
        regardless of how they were generated.

        :param other: The other instance of the BaseBoundary class.
        :return: Whether the two instances are equal.
        """

        return isinstance(other, BaseBoundary) and self._BOX == other._BOX \
            and np.array_equal(self._VALUES, other._VALUES)

    def __hash__(self) -> int:
        return hash((self._BOX, self._VALUES.tobytes()))

    # endregion Constructors

    # region Getter methods

    def get_box(self) -> Box:
        return self._BOX

    def get_values(self) -> np.ndarray:
        return self._VALUES

    def get_value(self, site: Site) -> float:
        """Gets the field value at one exterior boundary site.

        :param site: The exterior boundary site.
        :return: The value omega_y.
        """

        return float(self._VALUES[self._BOX.cycle_position(site)])

    def get_descriptor(self) -> str:
        return self._DESCRIPTOR

    def get_site_fields(self) -> np.ndarray:
        return self._SITE_FIELDS

    # endregion Getter methods

    def window_sums(self, k: int) -> np.ndarray:
        """Sums the field over every cyclic window of length k.

        :param k: The window length, 1 <= k <= 4l.
        :return: Array whose entry s is the sum over the window starting at cycle position s.
        """

        n = self._VALUES.shape[0]
        if not 1 <= k <= n:
            raise ValueError("Interval length must lie in [1, {}], got {}".format(n, k))
        cumulative = np.concatenate(([0.0], np.cumsum(np.concatenate((self._VALUES, self._VALUES)))))
        starts = np.arange(n)
        return cumulative[starts + k] - cumulative[starts]

    def interval_sum(self, interval: BoundaryInterval) -> float:
        return float(sum(self.get_value(site) for site in interval))

    def is_constant(self) -> bool:
        return bool(np.all(self._VALUES == self._VALUES[0]))

    def negated(self) -> "BaseBoundary":
        """Gets the boundary condition -omega.

        :return: The negated boundary, with descriptor "neg:<descriptor>".
        """

        descriptor = self._DESCRIPTOR[4:] if self._DESCRIPTOR.startswith("neg:") else "neg:" + self._DESCRIPTOR
        return BaseBoundary(self._BOX, -self._VALUES, descriptor)

    def to_text(self) -> str:
        """Serialises the field, one value per line in cycle order.

        :return: The text.
        """

        return "".join(format_float(value) + "\n" for value in self._VALUES)

    def to_file(self, path: str) -> None:
        with open(path, "w") as f:
            f.write(self.to_text())
        _logger.info("Boundary '%s' written to %s", self._DESCRIPTOR, path)


if __name__ == '__main__':
    pass
