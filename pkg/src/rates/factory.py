#!/usr/bin/env python3
"""
Construction of flip-rate families by name, and the single-site flip rate q(x, sigma, omega).

Usage:
    rates = make_rates("heat-bath", beta=1.5)
    flip_rate(rates, sigma, site, omega)
"""

import logging
from rates import BaseRates, ExponentialRates, HeatBathRates, MetropolisRates

from boundaries import BaseBoundary
from config import get_log_level
from hamiltonian import energy_delta_flip
from lattice import Site

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

RATE_KINDS = ("exponential", "metropolis", "heat-bath")

_FAMILIES = {
    "exponential": ExponentialRates,
    "metropolis": MetropolisRates,
    "heat-bath": HeatBathRates,
    "heat_bath": HeatBathRates,
}


def make_rates(kind: str, beta: float) -> BaseRates:
    """Builds a flip-rate family.

    :param kind: One of RATE_KINDS ("heat_bath" is accepted as an alias).
    :param beta: The inverse temperature, beta >= 0.
    :return: The rate family.
    """

    family = _FAMILIES.get(kind.strip().lower())
    if family is None:
        _logger.error("Unknown rate family '%s'", kind)
        raise ValueError("Unknown rate family '{}', expected one of {}".format(kind, ", ".join(RATE_KINDS)))
    return family(beta)


def flip_rate(family: BaseRates, sigma: int, x: Site, omega: BaseBoundary) -> float:
    """Gets the rate at which the spin at x flips in configuration sigma.

    :param family: The rate family.
    :param sigma: The bit-packed configuration.
    :param x: The site.
    :param omega: The boundary field.
    :return: The rate q(x, sigma, omega) > 0.
    """

    return family.rate(energy_delta_flip(sigma, x, omega))


if __name__ == '__main__':
    pass
