import logging
import math

import numpy as np
import pytest

from boundaries import make_boundary, parse_boundary_descriptor
from conftest import dyadic_field
from contours import TrapEvent, trap_indicator
from exceptions import ConvergenceError, GuardError
from lattice import build_box
from rates import RATE_KINDS, make_rates
from spectral import (build_generator, evolve, exact_gap, indicator_upper_bound, mu_mean, mu_norm, rayleigh_quotient,
                      schonmann_lower_bound, symmetrized_spectrum, trap_exit_flux, unsymmetric_spectrum)


# region Closed forms

@pytest.mark.parametrize("beta", [0.0, 1.0, 3.0])
def test_single_free_site(beta, settings):
    box = build_box(1)
    result = exact_gap(build_generator(box, make_boundary("free", box), make_rates("exponential", beta), settings))
    assert result.gap == pytest.approx(2.0)
    assert result.method == "dense_eig"
    assert abs(result.kernel) < 1e-10


@pytest.mark.parametrize("l", [1, 2, 3])
@pytest.mark.parametrize("kind, gap", [("exponential", 2.0), ("metropolis", 2.0), ("heat-bath", 1.0)])
def test_independent_spins_at_infinite_temperature(l, kind, gap, settings):
    box = build_box(l)
    result = exact_gap(build_generator(box, make_boundary("plus", box), make_rates(kind, 0.0), settings))
    assert result.gap == pytest.approx(gap, rel=1e-10)


def test_schonmann_bound_value():
    assert schonmann_lower_bound(2, 1.0, math.exp(-4.0)) == pytest.approx(math.exp(-16.0) / 4.0, rel=1e-12)
    with pytest.raises(ValueError):
        schonmann_lower_bound(0, 1.0, 1.0)
    with pytest.raises(ValueError):
        schonmann_lower_bound(2, 1.0, 0.0)


@pytest.mark.parametrize("l", [2, 3, pytest.param(4, marks=pytest.mark.slow)])
@pytest.mark.parametrize("beta", [0.5, 1.5, 2.5])
@pytest.mark.parametrize("kind", RATE_KINDS)
@pytest.mark.parametrize("descriptor", ["plus", "free", "alternating", "slab:0.5"])
def test_gap_sandwich(l, beta, kind, descriptor, settings):
    box = build_box(l)
    rates = make_rates(kind, beta)
    gen = build_generator(box, parse_boundary_descriptor(descriptor, box), rates, settings)
    result = exact_gap(gen, witness=False)
    assert result.gap > 0.0
    assert schonmann_lower_bound(l, beta, rates.q_lower()) <= result.gap

    trap = TrapEvent.from_gibbs(gen.get_gibbs())
    bound = indicator_upper_bound(gen, trap_indicator(box, trap.get_epsilon(), trap.get_delta_1()))
    assert result.gap <= bound * (1 + 1e-9)


@pytest.mark.parametrize("beta", [12.0, 20.0])
def test_unresolved_kernel_is_an_error(box2, beta, settings):
    # The rate scale exp(4 beta) swamps a gap of order one in double precision
    gen = build_generator(box2, make_boundary("plus", box2), make_rates("exponential", beta), settings)
    with pytest.raises(ConvergenceError):
        exact_gap(gen)


def test_large_beta_gap_is_resolved_quietly(box2, settings, caplog):
    gen = build_generator(box2, make_boundary("plus", box2), make_rates("exponential", 5.0), settings)
    with caplog.at_level(logging.WARNING, logger="spectral"):
        result = exact_gap(gen)
    assert result.gap == pytest.approx(4.0, rel=1e-3)
    assert not [record for record in caplog.records if record.name == "spectral"]


def test_kernel_is_the_constant_function(box3, settings):
    gen = build_generator(box3, make_boundary("alternating", box3), make_rates("exponential", 1.0), settings)
    result = exact_gap(gen)
    assert abs(result.kernel) <= 1e-8 * gen.get_scale()
    _, vectors = np.linalg.eigh(gen.dense_symmetrized())
    bottom = vectors[:, 0]
    root = gen.get_sqrt_stationary()
    # In L2(mu) the bottom eigenfunction bottom / root is a multiple of the constant
    assert np.linalg.norm(bottom * np.sign(bottom @ root) - root) < 1e-8

# endregion Closed forms


# region Generator

def test_spectra_agree(box2, rng, settings):
    gen = build_generator(box2, dyadic_field(box2, rng), make_rates("heat-bath", 1.0), settings)
    symmetric = symmetrized_spectrum(gen)
    assert np.allclose(symmetric, unsymmetric_spectrum(gen), atol=1e-8)
    assert exact_gap(gen).gap == pytest.approx(symmetric[1], abs=1e-12)


def test_generator_annihilates_constants(box3, rng, settings):
    gen = build_generator(box3, dyadic_field(box3, rng), make_rates("exponential", 0.8), settings)
    assert np.allclose(gen.apply_generator(np.ones(512)), 0.0, atol=1e-12)
    assert np.allclose(gen.sparse_generator().sum(axis=1), 0.0, atol=1e-12)
    assert np.allclose(gen.apply(gen.get_sqrt_stationary()), 0.0, atol=1e-12)
    assert gen.get_stationary().sum() == pytest.approx(1.0)


def test_witness_attains_the_gap(box3, settings):
    gen = build_generator(box3, make_boundary("alternating", box3), make_rates("metropolis", 1.2), settings)
    result = exact_gap(gen)
    f = result.witness
    assert mu_mean(gen, f) == pytest.approx(0.0, abs=1e-9)
    assert mu_norm(gen, f) == pytest.approx(1.0)
    assert rayleigh_quotient(gen, f) == pytest.approx(result.gap, rel=1e-8)
    assert result.residual <= 1e-8


def test_witness_can_be_dropped(box2, settings):
    gen = build_generator(box2, make_boundary("plus", box2), make_rates("exponential", 1.0), settings)
    assert exact_gap(gen, witness=False).witness is None


def test_rayleigh_quotient_bounds_the_gap(box3, rng, settings):
    gen = build_generator(box3, dyadic_field(box3, rng), make_rates("exponential", 1.0), settings)
    gap = exact_gap(gen).gap
    for _ in range(10):
        assert rayleigh_quotient(gen, rng.standard_normal(512)) >= gap * (1 - 1e-10)
    with pytest.raises(ValueError):
        rayleigh_quotient(gen, np.full(512, 3.0))
    with pytest.raises(ValueError):
        rayleigh_quotient(gen, np.zeros(5))


def test_indicator_bound_rejects_trivial_events(box2, settings):
    gen = build_generator(box2, make_boundary("plus", box2), make_rates("exponential", 1.0), settings)
    with pytest.raises(ValueError):
        indicator_upper_bound(gen, np.ones(16, dtype=bool))
    with pytest.raises(ValueError):
        trap_exit_flux(gen, np.ones(16, dtype=bool))


def test_indicator_bound_matches_rayleigh_quotient(box2, settings):
    rates = make_rates("exponential", 0.7)
    gen = build_generator(box2, make_boundary("minus", box2), rates, settings)
    mask = np.zeros(16, dtype=bool)
    mask[15] = True
    f = mask.astype(float)
    # The Dirichlet form of an indicator is at most q_upper times the exit flux
    assert rayleigh_quotient(gen, f) <= indicator_upper_bound(gen, mask) * (1 + 1e-12)
    assert trap_exit_flux(gen, mask) > 0.0


def test_indicator_bound_is_symmetric_in_the_event(box2, settings):
    gen = build_generator(box2, make_boundary("alternating", box2), make_rates("exponential", 1.0), settings)
    trap = TrapEvent.from_gibbs(gen.get_gibbs())
    mask = np.array(trap_indicator(box2, trap.get_epsilon(), trap.get_delta_1()))
    inside, outside = indicator_upper_bound(gen, mask), indicator_upper_bound(gen, ~mask)
    assert inside == pytest.approx(outside, rel=1e-12)
    assert exact_gap(gen).gap <= inside * (1 + 1e-9)

# endregion Generator


# region Semigroup

def test_semigroup_contract(box2, rng, settings):
    gen = build_generator(box2, dyadic_field(box2, rng), make_rates("exponential", 1.0), settings)
    gap = exact_gap(gen).gap
    f = rng.standard_normal(16)
    centred = f - mu_mean(gen, f)

    assert np.allclose(evolve(gen, f, 0.0), f)
    for t in (0.1, 1.0, 10.0):
        g = evolve(gen, f, t)
        assert mu_mean(gen, g) == pytest.approx(mu_mean(gen, f), abs=1e-10)
        assert mu_norm(gen, g - mu_mean(gen, g)) <= math.exp(-gap * t) * mu_norm(gen, centred) * (1 + 1e-8) + 1e-12
    with pytest.raises(ValueError):
        evolve(gen, f, -1.0)

# endregion Semigroup


# region Solver paths

def test_iterative_path_matches_dense(box3, monkeypatch, settings):
    omega = make_boundary("alternating", box3)
    rates = make_rates("exponential", 0.5)
    dense = exact_gap(build_generator(box3, omega, rates, settings))

    monkeypatch.setenv("ISING_GAP_DENSE_LIMIT", "64")
    iterative = exact_gap(build_generator(box3, omega, rates))
    assert iterative.method == "iterative_eig"
    assert iterative.kernel is None
    assert iterative.gap == pytest.approx(dense.gap, rel=1e-7)
    assert iterative.residual <= 1e-8


def test_dense_only_operations_are_guarded(box3, monkeypatch, settings):
    monkeypatch.setenv("ISING_GAP_DENSE_LIMIT", "64")
    gen = build_generator(box3, make_boundary("plus", box3), make_rates("exponential", 1.0))
    with pytest.raises(GuardError):
        unsymmetric_spectrum(gen)
    with pytest.raises(GuardError):
        evolve(gen, np.ones(512), 1.0)


def test_iterative_limit_is_enforced(box3, monkeypatch, settings):
    monkeypatch.setenv("ISING_GAP_ITERATIVE_LIMIT", "256")
    with pytest.raises(GuardError):
        build_generator(box3, make_boundary("plus", box3), make_rates("exponential", 1.0))

# endregion Solver paths
