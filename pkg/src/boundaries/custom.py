#!/usr/bin/env python3
"""
Custom boundary conditions given value by value, in memory or from a text file.

The text format is one decimal value in [-1, 1] per line, in exterior boundary cycle order.
Blank lines and lines starting with '#' are ignored.

Usage:
    CustomBoundary(box, values)
    CustomBoundary.from_text(box, text)
    CustomBoundary.from_file(box, "omega.txt")
"""

from boundaries import BaseBoundary
import logging
from typing import Sequence

from config import get_log_level
from exceptions import PlanError
from lattice import Box

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)


class CustomBoundary(BaseBoundary):
    """CustomBoundary class for fields given explicitly in cycle order."""

    def __init__(self, box: Box, values: Sequence[float], descriptor: str = "custom") -> None:
        super().__init__(box, values, descriptor)

    @classmethod
    def from_text(cls, box: Box, text: str, descriptor: str = "custom") -> "CustomBoundary":
        """Parses the one-value-per-line text format.

        :param box: The box.
        :param text: The text.
        :param descriptor: The descriptor to attach.
        :return: The boundary.
        """

        values = []
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(float(line))
            except ValueError:
                _logger.error("CustomBoundary could not parse line %d: %s", number, line)
                raise PlanError("Line {} of boundary text is not a number: '{}'".format(number, line))
        return cls(box, values, descriptor)

    @classmethod
    def from_file(cls, box: Box, path: str) -> "CustomBoundary":
        """Reads a boundary file.

        :param box: The box.
        :param path: The path of the file.
        :return: The boundary, with descriptor "file:<path>".
        """

        try:
            with open(path) as f:
                text = f.read()
        except OSError as e:
            _logger.error("CustomBoundary could not read %s: %s", path, e)
            raise PlanError("Could not read boundary file '{}': {}".format(path, e))
        return cls.from_text(box, text, "file:{}".format(path))


if __name__ == '__main__':
    pass
