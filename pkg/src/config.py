#!/usr/bin/env python3
"""
Environment-driven settings for ising-gap.

Settings are read from environment variables, which the CLI entry point populates from a
.env file via python-dotenv before anything else runs. Use the .env.example file as a
template. Invalid values are logged and replaced by their defaults.

Usage:
    settings = get_settings()
    settings.get_dense_limit()
"""

import logging
import os
from typing import Callable, Optional, TypeVar

_T = TypeVar('_T')

# Defaults
_DEFAULT_LOG_LEVEL = "INFO"
_DEFAULT_DENSE_LIMIT = 2 ** 14
_DEFAULT_ITERATIVE_LIMIT = 2 ** 25
_DEFAULT_ENUMERATION_LIMIT = 25
_DEFAULT_EXACT_SITE_LIMIT = 16
_DEFAULT_WORKERS = 1
_DEFAULT_OUTPUT_DIR = "results"


def get_log_level() -> int:
    """Gets the logging level configured through ISING_GAP_LOG_LEVEL.

    :return: The numeric logging level, INFO if unset or unrecognised.
    """

    name = os.environ.get("ISING_GAP_LOG_LEVEL", _DEFAULT_LOG_LEVEL).upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.INFO


# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)


def _read(name: str, default: _T, cast: Callable[[str], _T], valid: Callable[[_T], bool]) -> _T:
    """Helper function to read one environment variable.

    :param name: The environment variable name.
    :param default: The value used if the variable is unset or invalid.
    :param cast: Converts the raw string into the setting type.
    :param valid: Predicate the converted value must satisfy.
    :return: The setting value.
    """

    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = cast(raw.strip())
    except ValueError:
        _logger.warning("%s=%s could not be parsed, using default %s", name, raw, default)
        return default
    if not valid(value):
        _logger.warning("%s=%s is out of range, using default %s", name, raw, default)
        return default
    return value


class Settings(object):
    """Settings class holding the environment configuration of a run.

    Attributes
        _DENSE_LIMIT        Largest state-space dimension solved with a dense eigensolver.
        _ITERATIVE_LIMIT    Largest state-space dimension accepted by the matrix-free path.
        _ENUMERATION_LIMIT  Largest number of sites l^2 for exact Gibbs enumeration.
        _EXACT_SITE_LIMIT   Method-policy threshold on l^2 (exact at or below, simulation above).
        _WORKERS            Number of concurrent grid points or replicas.
        _OUTPUT_DIR         Directory for CSV and JSON outputs.
    """

    # region Constructors

    def __init__(self) -> None:
        """Initialisation of the Settings class from the current environment."""

        positive = (lambda v: v > 0)
        self._DENSE_LIMIT = _read("ISING_GAP_DENSE_LIMIT", _DEFAULT_DENSE_LIMIT, int, positive)
        self._ITERATIVE_LIMIT = _read("ISING_GAP_ITERATIVE_LIMIT", _DEFAULT_ITERATIVE_LIMIT, int, positive)
        self._ENUMERATION_LIMIT = _read("ISING_GAP_ENUMERATION_LIMIT", _DEFAULT_ENUMERATION_LIMIT, int, positive)
        self._EXACT_SITE_LIMIT = _read("ISING_GAP_EXACT_SITE_LIMIT", _DEFAULT_EXACT_SITE_LIMIT, int, positive)
        self._WORKERS = _read("ISING_GAP_WORKERS", _DEFAULT_WORKERS, int, positive)
        self._OUTPUT_DIR = _read("ISING_GAP_OUTPUT_DIR", _DEFAULT_OUTPUT_DIR, str, (lambda v: len(v) > 0))

    def __repr__(self) -> str:
        """Overriden __repr__ of Settings class.

        :return: The __repr__ string.
        """

        return super().__repr__() + ": dense_limit={}, iterative_limit={}, enumeration_limit={}, " \
                                    "exact_site_limit={}, workers={}, output_dir={}" \
            .format(self._DENSE_LIMIT, self._ITERATIVE_LIMIT, self._ENUMERATION_LIMIT,
                    self._EXACT_SITE_LIMIT, self._WORKERS, self._OUTPUT_DIR)

    # endregion Constructors

    # region Getter methods

    def get_dense_limit(self) -> int:
        return self._DENSE_LIMIT

    def get_iterative_limit(self) -> int:
        return self._ITERATIVE_LIMIT

    def get_enumeration_limit(self) -> int:
        return self._ENUMERATION_LIMIT

    def get_exact_site_limit(self) -> int:
        return self._EXACT_SITE_LIMIT

    def get_workers(self) -> int:
        return self._WORKERS

    def get_output_dir(self) -> str:
        return self._OUTPUT_DIR

    # endregion Getter methods


def get_settings(override: Optional[Settings] = None) -> Settings:
    """Gets the settings for the current environment.

    Settings are re-read on every call so that tests can monkeypatch the environment.

    :param override: Settings to use instead of the environment, if any.
    :return: The Settings instance.
    """

    return override if override is not None else Settings()


if __name__ == '__main__':
    pass
