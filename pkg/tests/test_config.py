import logging

import pytest

from config import Settings, get_log_level, get_settings
from exceptions import ConvergenceError, GuardError, IsingGapError, PlanError
from utils import format_float, make_rng, parse_number_list


def test_defaults(settings, tmp_path):
    assert settings.get_dense_limit() == 2 ** 14
    assert settings.get_iterative_limit() == 2 ** 25
    assert settings.get_enumeration_limit() == 25
    assert settings.get_exact_site_limit() == 16
    assert settings.get_workers() == 1
    assert settings.get_output_dir() == str(tmp_path)


def test_environment_overrides(settings, monkeypatch):
    monkeypatch.setenv("ISING_GAP_WORKERS", "4")
    monkeypatch.setenv("ISING_GAP_DENSE_LIMIT", "1024")
    fresh = get_settings()
    assert fresh.get_workers() == 4
    assert fresh.get_dense_limit() == 1024
    assert get_settings(settings) is settings


@pytest.mark.parametrize("value", ["many", "0", "-3", " "])
def test_invalid_values_fall_back(settings, monkeypatch, value):
    monkeypatch.setenv("ISING_GAP_WORKERS", value)
    assert Settings().get_workers() == 1


def test_log_level(monkeypatch):
    monkeypatch.setenv("ISING_GAP_LOG_LEVEL", "debug")
    assert get_log_level() == logging.DEBUG
    monkeypatch.setenv("ISING_GAP_LOG_LEVEL", "chatty")
    assert get_log_level() == logging.INFO


def test_error_hierarchy():
    assert issubclass(GuardError, IsingGapError) and issubclass(GuardError, ValueError)
    assert issubclass(PlanError, ValueError)
    assert ConvergenceError("stuck", 1e-3).residual == 1e-3


def test_helpers():
    assert parse_number_list("2, 3,4,", int) == (2, 3, 4)
    with pytest.raises(ValueError):
        parse_number_list("2,three", int)
    assert format_float(None) == ""
    assert format_float(0.1) == "0.1"
    assert format_float(float("nan")) == "nan"
    assert make_rng(5, 1).random() == make_rng(5, 1).random()
    assert make_rng(5, 1).random() != make_rng(5, 2).random()
    assert make_rng(-4).random() == make_rng(4).random()
