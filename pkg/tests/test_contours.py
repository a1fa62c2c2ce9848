import numpy as np
import pytest

from boundaries import make_boundary
from conftest import dyadic_field
from contours import (Crossing, TrapEvent, check_lemma31, check_lemma32, clusters, contour_from_bonds,
                      contour_from_text, contour_to_text, contours_enclosing, count_contours_through, counting_bound,
                      decompose_noncrossing, delta_H, epsilon_contours_at, half_delta_identity, is_contour,
                      is_crossing, lemma31_constant, outer_contour, peierls_sum, random_contour_instance,
                      trap_indicator, trap_members)
from contours.counting import MAX_COUNT_LENGTH
from exceptions import GuardError, HypothesisError, PlanError
from gibbs import build_gibbs, event_probability
from hamiltonian import constant_configuration, full_mask, spin_at
from lattice import Bond, Site, build_box, dual_of


# region Geometry

def test_checkerboard_clusters(box2):
    plus = clusters(9, 1, box2)
    assert sorted(plus, key=sorted) == [frozenset({Site(0, 0)}), frozenset({Site(1, 1)})]
    assert len(clusters(9, -1, box2)) == 2
    assert all(len(gamma) == 4 for gamma in epsilon_contours_at(9, 1, box2))


def test_outer_contour_fills_holes():
    ring = [Site(x1, x2) for x1 in (-1, 0, 1) for x2 in (-1, 0, 1) if (x1, x2) != (0, 0)]
    gamma = outer_contour(ring)
    assert Site(0, 0) in gamma.get_theta()
    assert len(gamma) == 12


def test_outer_contour_rejects_disconnected():
    with pytest.raises(ValueError):
        outer_contour([Site(0, 0), Site(2, 0)])


def test_contour_from_bonds_round_trip(box3, rng):
    for _ in range(20):
        gamma, _ = random_contour_instance(box3, rng, 1)
        rebuilt = contour_from_bonds(gamma.get_bonds())
        assert rebuilt == gamma
        assert rebuilt.get_theta() == gamma.get_theta()


def test_two_squares_are_not_a_contour():
    bonds = outer_contour([Site(0, 0)]).get_bond_set() | outer_contour([Site(3, 0)]).get_bond_set()
    assert not is_contour(bonds)
    with pytest.raises(ValueError):
        contour_from_bonds(bonds)


def test_crossing_classification():
    box = build_box(3)
    assert is_crossing(outer_contour(box.get_sites()), box) == Crossing.BOTH
    row = [Site(x1, 0) for x1 in (-1, 0, 1)]
    assert is_crossing(outer_contour(row), box) == Crossing.HORIZONTAL
    column = [Site(0, x2) for x2 in (-1, 0, 1)]
    assert is_crossing(outer_contour(column), box) == Crossing.VERTICAL
    assert is_crossing(outer_contour([Site(1, 1)]), box) == Crossing.NONE
    assert is_crossing(outer_contour([Site(0, 0)]), box) == Crossing.NONE


def test_corner_decomposition(box3):
    decomposition = decompose_noncrossing(outer_contour([Site(1, 1)]), box3)
    assert len(decomposition.get_underline()) == 2
    assert len(decomposition.get_overline()) == 2
    assert len(decomposition.get_interval()) == 2
    assert decomposition.get_theta_tilde() == frozenset({Site(1, 1)})
    assert not decomposition.is_degenerate()


def test_interior_decomposition_is_degenerate(box3):
    gamma = outer_contour([Site(0, 0)])
    decomposition = decompose_noncrossing(gamma, box3)
    assert decomposition.is_degenerate()
    assert decomposition.get_underline() == gamma.get_bond_set()
    assert len(decomposition.get_interval()) == 0


def test_crossing_contour_does_not_decompose(box3):
    with pytest.raises(HypothesisError):
        decompose_noncrossing(outer_contour([Site(x1, 0) for x1 in (-1, 0, 1)]), box3)


def test_noncrossing_interval_is_linf_connected(box3, rng):
    for _ in range(100):
        gamma, _ = random_contour_instance(box3, rng, 1, max_size=4)
        if is_crossing(gamma, box3) != Crossing.NONE:
            continue
        decomposition = decompose_noncrossing(gamma, box3)
        assert gamma.get_theta() <= decomposition.get_theta_tilde()
        if not decomposition.is_degenerate():
            assert decomposition.get_interval().is_linf_connected()

# endregion Geometry


# region Energy

def test_interior_unit_contour_energy(box3):
    sigma = 1 << box3.get_origin_index()
    gamma = outer_contour([Site(0, 0)])
    assert delta_H([gamma], sigma, make_boundary("plus", box3), box3) == 8.0
    assert delta_H([gamma], sigma, make_boundary("free", box3), box3) == 2 * len(gamma)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_full_box_contour_energy(l):
    box = build_box(l)
    gamma = outer_contour(box.get_sites())
    assert delta_H([gamma], constant_configuration(box, 1), make_boundary("plus", box), box) == -8.0 * l


def test_half_delta_identity(rng):
    for _ in range(300):
        box = build_box(int(rng.integers(2, 6)))
        epsilon = 1 if rng.random() < 0.5 else -1
        omega = dyadic_field(box, rng)
        gamma, sigma = random_contour_instance(box, rng, epsilon)
        assert gamma in epsilon_contours_at(sigma, epsilon, box)
        assert half_delta_identity(gamma, epsilon, omega, box) == delta_H([gamma], sigma, omega, box) / 2.0

# endregion Energy


# region Trap

def test_trap_contains_all_plus(box3):
    trap = TrapEvent.from_delta(3, 1, 0.5)
    assert trap.contains(full_mask(box3))
    assert not trap.contains(0)
    in_trap, members = trap_members(full_mask(box3), trap, make_boundary("plus", box3), box3)
    assert in_trap
    assert len(members) == 1 and len(members[0]) == 12


def test_trap_rejects_bad_parameters():
    with pytest.raises(ValueError):
        TrapEvent(3, 0, 0.9)
    with pytest.raises(ValueError):
        TrapEvent(3, 1, 1.0)


def test_trap_members_size_mismatch(box2, box3):
    with pytest.raises(ValueError):
        trap_members(0, TrapEvent.from_delta(3, 1), make_boundary("plus", box2), box2)
    with pytest.raises(ValueError):
        trap_members(0, TrapEvent.from_delta(3, 1), make_boundary("plus", box2), box3)


def test_trap_indicator_matches_members(box3):
    trap = TrapEvent.from_delta(3, 1, 0.5)
    indicator = trap_indicator(box3, 1, trap.get_delta_1())
    omega = make_boundary("free", box3)
    for sigma in range(512):
        assert bool(indicator[sigma]) == trap_members(sigma, trap, omega, box3)[0]


def test_minus_trap_is_the_flipped_plus_trap(box3):
    delta_1 = TrapEvent.from_delta(3, 1).get_delta_1()
    plus = trap_indicator(box3, 1, delta_1)
    minus = trap_indicator(box3, -1, delta_1)
    assert np.array_equal(minus, plus[np.arange(512) ^ full_mask(box3)])
    assert not minus.flags.writeable

# endregion Trap


# region Counting

@pytest.mark.parametrize("m, expected", [(1, 0), (3, 0), (4, 2), (5, 0), (6, 6)])
def test_count_contours_through(m, expected):
    assert count_contours_through(dual_of(Bond.between(Site(0, 0), Site(1, 0))), m) == expected


@pytest.mark.parametrize("m", [4, 6, 8, 10])
def test_counting_bound_holds(m):
    bond = dual_of(Bond.between(Site(0, 0), Site(0, 1)))
    assert count_contours_through(bond, m) <= counting_bound(m)


def test_counting_guards():
    bond = dual_of(Bond.between(Site(0, 0), Site(1, 0)))
    with pytest.raises(GuardError):
        count_contours_through(bond, MAX_COUNT_LENGTH + 1)
    with pytest.raises(ValueError):
        count_contours_through(bond, 0)


def test_contours_enclosing(box2):
    contours = contours_enclosing(box2, Site(0, 0))
    assert len(contours) == 7
    assert len(contours[0]) == 4
    assert all(Site(0, 0) in gamma.get_theta() for gamma in contours)


@pytest.mark.parametrize("beta", [2.0, 3.0])
def test_peierls_bound_on_small_box(box3, beta):
    omega = make_boundary("alternating", box3)
    table = build_gibbs(box3, beta, omega)
    trap = TrapEvent.from_gibbs(table)
    indicator = trap_indicator(box3, trap.get_epsilon(), trap.get_delta_1())
    origin = box3.get_origin_index()
    event = np.array([spin_at(s, origin) == trap.get_epsilon() and not indicator[s] for s in range(512)])
    assert event_probability(table, event) <= peierls_sum(box3, beta, Site(0, 0))


@pytest.mark.slow
def test_trap_is_likely_on_four_box():
    box = build_box(4)
    omega = make_boundary("alternating", box)
    probabilities = []
    for beta in (1.0, 2.0, 3.0, 4.0):
        table = build_gibbs(box, beta, omega)
        trap = TrapEvent.from_gibbs(table)
        probabilities.append(event_probability(table, trap_indicator(box, trap.get_epsilon(), trap.get_delta_1())))
    assert max(probabilities) >= 1.0 / 3.0

# endregion Counting


# region Energy estimates

def test_corner_contour_estimates(box3):
    sigma = 1 << box3.index_of(Site(1, 1))
    gamma = outer_contour([Site(1, 1)]).with_sign(1)
    reports = check_lemma31([gamma], sigma, make_boundary("free", box3), box3, "a")
    assert len(reports) == 4
    assert all(report.passes for report in reports)


def test_two_corner_contours(box3):
    sigma = (1 << box3.index_of(Site(1, 1))) | (1 << box3.index_of(Site(-1, -1)))
    gammas = epsilon_contours_at(sigma, 1, box3)
    assert len(gammas) == 2
    reports = check_lemma31(gammas, sigma, make_boundary("free", box3), box3, "b", c1=0.5, c2=0.0)
    assert all(report.passes for report in reports)
    assert reports[0].detail["total_length"] == 8


def test_wrong_configuration_is_a_hypothesis_error(box3):
    gamma = outer_contour([Site(1, 1)]).with_sign(1)
    with pytest.raises(HypothesisError):
        check_lemma31([gamma], 0, make_boundary("free", box3), box3, "a")
    with pytest.raises(HypothesisError):
        check_lemma31([outer_contour([Site(1, 1)])], 1 << 8, make_boundary("free", box3), box3, "a")


def test_unknown_case(box3):
    gamma = outer_contour([Site(1, 1)]).with_sign(1)
    with pytest.raises(ValueError):
        check_lemma31([gamma], 1 << 8, make_boundary("free", box3), box3, "d")
    with pytest.raises(ValueError):
        check_lemma32(gamma, 1 << 8, make_boundary("free", box3), box3, "c")


@pytest.mark.parametrize("kind", ["free", "plus", "minus"])
def test_single_side_estimate(box3, kind):
    sigma = 1 << box3.index_of(Site(0, 1))
    gamma = outer_contour([Site(0, 1)]).with_sign(1)
    (report,) = check_lemma32(gamma, sigma, make_boundary(kind, box3), box3, "a")
    assert report.passes
    assert report.rhs == 2


def test_center_estimate(box3):
    sigma = 1 << box3.get_origin_index()
    gamma = outer_contour([Site(0, 0)]).with_sign(1)
    (report,) = check_lemma32(gamma, sigma, make_boundary("plus", box3), box3, "b")
    assert report.passes
    assert report.lhs == 8.0
    assert report.rhs == pytest.approx(8.0 / 9.0)
    with pytest.raises(HypothesisError):
        check_lemma32(outer_contour([Site(1, 1)]).with_sign(1), 1 << 8, make_boundary("plus", box3), box3, "b")


def test_interval_constant():
    assert lemma31_constant(0.5, 0.75) == pytest.approx(0.125 / 8.125)
    with pytest.raises(ValueError):
        lemma31_constant(0.5, 0.4)


def test_random_noncrossing_estimates(rng):
    for _ in range(200):
        box = build_box(int(rng.integers(3, 7)))
        gamma, sigma = random_contour_instance(box, rng, 1, max_size=box.get_side())
        if is_crossing(gamma, box) != Crossing.NONE:
            continue
        for report in check_lemma31([gamma], sigma, dyadic_field(box, rng), box, "a"):
            assert report.passes, report

# endregion Energy estimates


# region Text format

def test_contour_text_round_trip(box3, rng):
    gamma, _ = random_contour_instance(box3, rng, -1)
    parsed = contour_from_text(contour_to_text(gamma))
    assert parsed == gamma
    assert parsed.get_sign() == -1
    assert parsed.get_theta() == gamma.get_theta()


def test_contour_text_errors():
    with pytest.raises(PlanError):
        contour_from_text("# contour sign=+\n0 0 x 0\n")
    with pytest.raises(PlanError):
        contour_from_text("0 0 1 0\n")

# endregion Text format
