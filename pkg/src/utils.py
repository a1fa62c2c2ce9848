#!/usr/bin/env python3
"""
Behind-the-scenes non-functional utilities.

This script provides a list of utilities used by various other functions:
number-list parsing for the CLI and plan files, deterministic float formatting for
output files, reproducible random streams, and coloured status lines for the terminal.
"""

import colorama
import crayons
import logging
import math
import numpy as np
from typing import Optional, Tuple, Union

from config import get_log_level

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

# Makes crayons' ANSI codes work on Windows terminals too
colorama.init()


def parse_number_list(text: str, cast: Optional[type] = float) -> Tuple[Union[int, float], ...]:
    """Helper function to parse a comma-separated list of numbers, e.g. "2,3,4".

    Empty items are ignored, so trailing commas are harmless.

    :param text: The comma-separated text.
    :param cast: The type to convert each item into.
    :return: The parsed numbers, in order.
    """

    items = [item.strip() for item in text.split(",")]
    try:
        return tuple(cast(item) for item in items if item)
    except ValueError:
        raise ValueError("Could not parse '{}' as a list of {}".format(text, cast.__name__))


def format_float(value: Optional[float]) -> str:
    """Helper function to format floats identically across runs.

    repr() gives the shortest round-tripping representation, so files written from the same
    numbers are byte-identical.

    :param value: The value to format, or None.
    :return: The formatted value; the empty string for None and "nan" / "inf" for non-finite values.
    """

    if value is None:
        return ""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Helper function to build a reproducible counter-based random stream.

    Each (seed, stream...) tuple gets an independent Philox stream, so replicas that run
    concurrently draw the same numbers regardless of scheduling.

    :param seed: The user-facing seed.
    :param stream: Stream identifiers, e.g. the replica index.
    :return: The random generator.
    """

    # Sanity check
    if seed < 0:
        _logger.warning("utils.make_rng expects a non-negative seed, seed=%d", seed)
        seed = abs(seed)

    sequence = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(sequence))


def sign_symbol(epsilon: int) -> str:
    """Helper function to render a sign as '+' or '-'.

    :param epsilon: The sign, +1 or -1.
    :return: The symbol.
    """

    return "+" if epsilon > 0 else "-"


def status_line(passed: bool, text: str) -> str:
    """Helper function to prefix a line with a coloured PASS / FAIL tag for the terminal.

    :param passed: Whether the check passed.
    :param text: The text describing the check.
    :return: The coloured line.
    """

    tag = crayons.green("PASS", bold=True) if passed else crayons.red("FAIL", bold=True)
    return "[{}] {}".format(tag, text)


if __name__ == '__main__':
    pass
