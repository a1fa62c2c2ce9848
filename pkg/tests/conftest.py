#!/usr/bin/env python3
"""
Shared fixtures for the ising-gap test suite.

The package modules import each other by bare name from src/, exactly as the entry script does,
so src/ is put on sys.path before any test module is collected.
"""

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from boundaries import CustomBoundary, make_boundary  # noqa: E402
from config import Settings  # noqa: E402
from lattice import build_box  # noqa: E402
from utils import make_rng  # noqa: E402


@pytest.fixture
def box2():
    return build_box(2)


@pytest.fixture
def box3():
    return build_box(3)


@pytest.fixture
def rng():
    return make_rng(2024)


@pytest.fixture
def settings(monkeypatch, tmp_path):
    """Settings read from a clean environment, writing outputs under a temporary directory."""

    for name in list(os.environ):
        if name.startswith("ISING_GAP_"):
            monkeypatch.delenv(name)
    monkeypatch.setenv("ISING_GAP_OUTPUT_DIR", str(tmp_path))
    return Settings()


def dyadic_field(box, rng):
    """Random boundary field with values in {-1, -7/8, ..., 1}, so energies are exact in floating point."""

    return CustomBoundary(box, rng.integers(-8, 9, size=4 * box.get_side()) / 8.0, descriptor="random")


def constant_field(kind, box):
    return make_boundary(kind, box)


if __name__ == '__main__':
    pass
