import math

import numpy as np
import pytest

from boundaries import make_boundary
from conftest import dyadic_field
from hamiltonian import (Hamiltonian, constant_configuration, energy, energy_delta_flip, flip, from_grid, from_spins,
                         global_flip, random_configuration, spin_at, to_grid, to_spins)
from lattice import Site, build_box
from rates import RATE_KINDS, ExponentialRates, HeatBathRates, MetropolisRates, flip_rate, make_rates
from utils import make_rng


# region Configurations

def test_flip_is_an_involution(box3, rng):
    sigma = random_configuration(box3, rng)
    for index in range(box3.get_size()):
        assert flip(flip(sigma, index), index) == sigma
        assert spin_at(flip(sigma, index), index) == -spin_at(sigma, index)


def test_spin_conversions(box3, rng):
    sigma = random_configuration(box3, rng)
    assert from_spins(to_spins(sigma, box3)) == sigma
    assert from_grid(to_grid(sigma, box3)) == sigma
    assert global_flip(global_flip(sigma, box3), box3) == sigma
    assert constant_configuration(box3, 1) == global_flip(constant_configuration(box3, -1), box3)

# endregion Configurations


# region Energy

@pytest.mark.parametrize("kind, expected", [("plus", -12.0), ("free", -4.0), ("minus", 4.0)])
def test_all_plus_energy(box2, kind, expected):
    assert energy(constant_configuration(box2, 1), make_boundary(kind, box2), box2) == expected


@pytest.mark.parametrize("kind, expected", [("plus", 8.0), ("free", 4.0)])
def test_corner_flip_energy(box2, kind, expected):
    omega = make_boundary(kind, box2)
    assert energy_delta_flip(constant_configuration(box2, 1), Site(0, 0), omega) == expected


def test_flip_energy_matches_full_energy_exhaustively(box2, rng):
    for omega in (make_boundary("alternating", box2), dyadic_field(box2, rng)):
        ham = Hamiltonian(box2, omega)
        for sigma in range(16):
            for index, site in enumerate(box2.get_sites()):
                expected = ham.energy(flip(sigma, index)) - ham.energy(sigma)
                assert energy_delta_flip(sigma, site, omega) == expected
                assert ham.energy_delta_flip(sigma, index) == expected


def test_flip_energy_matches_full_energy_randomly(rng):
    for _ in range(200):
        box = build_box(int(rng.integers(1, 6)))
        omega = dyadic_field(box, rng)
        sigma = random_configuration(box, rng)
        site = box.get_sites()[int(rng.integers(box.get_size()))]
        expected = energy(flip(sigma, box.index_of(site)), omega, box) - energy(sigma, omega, box)
        assert energy_delta_flip(sigma, site, omega) == expected


def test_flip_energy_rejects_outside_site(box2):
    with pytest.raises(ValueError):
        energy_delta_flip(0, Site(5, 5), make_boundary("free", box2))


def test_vectorised_energies(box3, rng):
    ham = Hamiltonian(box3, dyadic_field(box3, rng))
    states = np.arange(512, dtype=np.int64)
    energies = ham.energies(states)
    deltas = ham.delta_flips(states)
    for sigma in (0, 37, 300, 511):
        assert energies[sigma] == ham.energy(sigma)
        for index in range(9):
            assert deltas[sigma, index] == ham.energy_delta_flip(sigma, index)
    assert np.array_equal(ham.all_energies(), energies)


def test_hamiltonian_rejects_foreign_boundary(box2, box3):
    with pytest.raises(ValueError):
        Hamiltonian(box2, make_boundary("plus", box3))

# endregion Energy


# region Rates

@pytest.mark.parametrize("kind, expected", [("exponential", 1.0), ("metropolis", 1.0), ("heat-bath", 0.5)])
def test_rates_at_infinite_temperature(kind, expected):
    rates = make_rates(kind, 0.0)
    for delta_h in (-8.0, -2.5, 0.0, 4.0, 8.0):
        assert rates.rate(delta_h) == expected


def test_exponential_rate_value():
    assert ExponentialRates(1.0).rate(8.0) == pytest.approx(math.exp(-4.0), rel=1e-15)
    assert ExponentialRates(1.0).rate(8.0) == pytest.approx(0.018316, abs=1e-6)


def test_exponential_certified_bounds():
    rates = ExponentialRates(1.5)
    assert rates.q_lower() == pytest.approx(math.exp(-6.0))
    assert rates.q_upper() == pytest.approx(math.exp(6.0))


def test_closed_forms():
    beta, delta_h = 0.7, 3.0
    assert MetropolisRates(beta).rate(delta_h) == pytest.approx(math.exp(-beta * delta_h))
    assert MetropolisRates(beta).rate(-delta_h) == 1.0
    assert HeatBathRates(beta).rate(delta_h) == pytest.approx(1.0 / (1.0 + math.exp(beta * delta_h)))


def test_heat_bath_tails_do_not_overflow():
    rates = HeatBathRates(50.0)
    assert rates.rate(-8.0) == 1.0
    assert 0.0 < rates.rate(8.0) < 1e-170
    assert np.all(np.isfinite(rates.rates(np.array([-8.0, 8.0]))))


def test_heat_bath_alias():
    assert make_rates("heat_bath", 1.0) == make_rates("heat-bath", 1.0)
    assert make_rates("Heat-Bath", 1.0).get_kind() == "heat-bath"


def test_unknown_family_and_bad_beta():
    with pytest.raises(ValueError):
        make_rates("glauber", 1.0)
    with pytest.raises(ValueError):
        make_rates("exponential", -1.0)
    with pytest.raises(ValueError):
        make_rates("exponential", float("inf"))


@pytest.mark.parametrize("kind", RATE_KINDS)
def test_detailed_balance_and_bounds(kind):
    rng = make_rng(7, RATE_KINDS.index(kind))
    for _ in range(2500):
        box = build_box(int(rng.integers(1, 5)))
        beta = 3.0 * float(rng.random())
        rates = make_rates(kind, beta)
        omega = dyadic_field(box, rng)
        ham = Hamiltonian(box, omega)
        sigma = random_configuration(box, rng)
        index = int(rng.integers(box.get_size()))
        site = box.site_of(index)

        forward = flip_rate(rates, sigma, site, omega)
        backward = flip_rate(rates, flip(sigma, index), site, omega)
        lhs = forward * math.exp(-beta * ham.energy(sigma))
        rhs = backward * math.exp(-beta * ham.energy(flip(sigma, index)))
        assert lhs == pytest.approx(rhs, rel=1e-12)
        assert rates.q_lower() * (1 - 1e-12) <= forward <= rates.q_upper() * (1 + 1e-12)


@pytest.mark.parametrize("kind", RATE_KINDS)
def test_vectorised_rates_agree(kind):
    rates = make_rates(kind, 1.3)
    deltas = np.linspace(-8.0, 8.0, 33)
    assert np.allclose(rates.rates(deltas), [rates.rate(d) for d in deltas], rtol=1e-13, atol=0.0)
    assert max(rates.detailed_balance_residual(d) for d in deltas) < 1e-12

# endregion Rates
