import math

import numpy as np
import pytest

import gibbs
import hamiltonian
from boundaries import make_boundary
from conftest import dyadic_field
from exceptions import GuardError
from gibbs import (build_gibbs, center_magnetization, center_sign, event_mask, event_probability, expectation,
                   log_event_probability, mean_energy)
from hamiltonian import full_mask, spin_at
from lattice import build_box


def test_single_site_free():
    table = build_gibbs(build_box(1), 1.3, make_boundary("free", build_box(1)))
    assert table.get_log_z() == pytest.approx(math.log(2.0))
    assert np.allclose(table.probabilities(), [0.5, 0.5])


@pytest.mark.parametrize("beta", [0.0, 0.4, 2.0])
def test_single_site_plus(beta):
    box = build_box(1)
    table = build_gibbs(box, beta, make_boundary("plus", box))
    expected = math.exp(4 * beta) / (math.exp(4 * beta) + math.exp(-4 * beta))
    assert table.probabilities()[1] == pytest.approx(expected)
    assert center_magnetization(table) == pytest.approx(2 * expected - 1)


def test_probabilities_are_normalised(box3, rng):
    table = build_gibbs(box3, 0.8, dyadic_field(box3, rng))
    assert table.probabilities().sum() == pytest.approx(1.0, abs=1e-12)
    assert table.log_probability(17) == pytest.approx(math.log(table.probabilities()[17]))


def test_free_boundary_is_symmetric(box3):
    table = build_gibbs(box3, 1.1, make_boundary("free", box3))
    origin = box3.get_origin_index()
    assert event_probability(table, lambda sigma: spin_at(sigma, origin) > 0) == pytest.approx(0.5)
    assert center_sign(table) == 1


@pytest.mark.parametrize("kind, sign", [("plus", 1), ("minus", -1), ("free", 1)])
def test_center_sign(box3, kind, sign):
    assert center_sign(build_gibbs(box3, 0.7, make_boundary(kind, box3))) == sign


def test_global_flip_covariance(box2, rng):
    omega = dyadic_field(box2, rng)
    p = build_gibbs(box2, 1.2, omega).probabilities()
    q = build_gibbs(box2, 1.2, omega.negated()).probabilities()
    full = full_mask(box2)
    for sigma in range(16):
        assert q[sigma] == pytest.approx(p[sigma ^ full], rel=1e-12)


def test_energy_derivative(box2, rng):
    omega = dyadic_field(box2, rng)
    beta, h = 0.6, 1e-5
    derivative = (build_gibbs(box2, beta + h, omega).get_log_z()
                  - build_gibbs(box2, beta - h, omega).get_log_z()) / (2 * h)
    assert derivative == pytest.approx(-mean_energy(build_gibbs(box2, beta, omega)), abs=1e-6)


def test_mean_energy_at_infinite_temperature(box2):
    # Uniform measure: the bond terms average out and so do the boundary terms
    assert mean_energy(build_gibbs(box2, 0.0, make_boundary("plus", box2))) == pytest.approx(0.0, abs=1e-12)


def test_large_beta_is_finite(box3):
    table = build_gibbs(box3, 200.0, make_boundary("plus", box3))
    assert np.isfinite(table.get_log_z())
    assert table.probabilities()[full_mask(box3)] == pytest.approx(1.0)
    assert log_event_probability(table, lambda sigma: sigma == 0) < -1000


def test_event_forms_agree(box3, rng):
    table = build_gibbs(box3, 0.9, dyadic_field(box3, rng))
    origin = box3.get_origin_index()
    mask = event_mask(table, lambda states: ((states >> origin) & 1) == 1, vectorized=True)
    assert mask.sum() == 256
    from_mask = event_probability(table, mask)
    from_callable = event_probability(table, lambda sigma: spin_at(sigma, origin) > 0)
    assert from_mask == pytest.approx(from_callable, rel=1e-12)
    assert event_probability(table, np.zeros(512, dtype=bool)) == 0.0
    assert expectation(table, mask.astype(float)) == pytest.approx(from_mask, rel=1e-12)


def test_event_mask_shape_is_checked(box2):
    table = build_gibbs(box2, 1.0, make_boundary("plus", box2))
    with pytest.raises(ValueError):
        event_mask(table, np.zeros(5, dtype=bool))


def test_streamed_enumeration_matches(box3, rng, monkeypatch):
    omega = dyadic_field(box3, rng)
    materialised = build_gibbs(box3, 1.4, omega)
    monkeypatch.setattr(gibbs, "MATERIALISE_SITE_LIMIT", 4)
    monkeypatch.setattr(hamiltonian, "BLOCK_SIZE", 64)
    streamed = build_gibbs(box3, 1.4, omega)

    assert not streamed.is_materialised()
    assert streamed.get_log_z() == pytest.approx(materialised.get_log_z(), rel=1e-12)
    assert center_magnetization(streamed) == pytest.approx(center_magnetization(materialised), abs=1e-12)
    assert mean_energy(streamed) == pytest.approx(mean_energy(materialised), rel=1e-12)
    with pytest.raises(GuardError):
        streamed.get_log_weights()


def test_enumeration_guard(settings):
    box = build_box(6)
    with pytest.raises(GuardError):
        build_gibbs(box, 1.0, make_boundary("plus", box), settings)


def test_negative_beta_is_rejected(box2):
    with pytest.raises(ValueError):
        build_gibbs(box2, -0.1, make_boundary("plus", box2))
