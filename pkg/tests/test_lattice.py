import pytest

from lattice import (BOTTOM, LEFT, RIGHT, TOP, Bond, Site, build_box, dual_of, bond_of, exterior_boundary_cycle,
                     interval_from_sites, intervals_of_length)


def test_single_site_box():
    box = build_box(1)
    assert box.get_sites() == (Site(0, 0),)
    assert len(exterior_boundary_cycle(box)) == 4
    assert box.get_origin_index() == 0


def test_two_by_two_box(box2):
    assert set(box2.get_sites()) == {Site(0, 0), Site(1, 0), Site(0, 1), Site(1, 1)}
    assert len(box2.get_interior_bonds()) == 4
    assert len(box2.get_boundary_bonds()) == 8
    assert box2.get_inner_boundary() == frozenset(box2.get_sites())


def test_exterior_boundary_size():
    assert len(build_box(4).get_exterior_boundary()) == 16


@pytest.mark.parametrize("l", [0, -3])
def test_build_box_rejects_non_positive(l):
    with pytest.raises(ValueError):
        build_box(l)


def test_canonical_order_is_row_major(box3):
    assert box3.get_sites()[:3] == (Site(-1, -1), Site(0, -1), Site(1, -1))
    assert box3.get_origin_index() == 4
    assert box3.site_of(box3.index_of(Site(1, 0))) == Site(1, 0)


@pytest.mark.parametrize("l", [1, 2, 3, 5])
def test_cycle_is_closed_under_linf_adjacency(l):
    cycle = exterior_boundary_cycle(build_box(l))
    assert len(cycle) == 4 * l
    assert len(set(cycle)) == 4 * l
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        assert a.linf_distance(b) == 1


def test_cycle_corner_adjacency(box2):
    cycle = exterior_boundary_cycle(box2)
    position = {site: k for k, site in enumerate(cycle)}
    assert abs(position[Site(-1, 0)] - position[Site(0, -1)]) in (1, len(cycle) - 1)


def test_cycle_starts_below_smallest_site(box3):
    assert exterior_boundary_cycle(box3)[0] == Site(-1, -2)


def test_full_length_windows(box2):
    windows = intervals_of_length(box2, 8)
    assert len(windows) == 8
    for window in windows:
        assert window.as_set() == box2.get_exterior_boundary()


def test_singleton_windows(box2):
    windows = intervals_of_length(box2, 1)
    assert len(windows) == 8
    assert all(len(w) == 1 for w in windows)


def test_windows_are_linf_connected():
    box = build_box(4)
    windows = intervals_of_length(box, 4)
    assert len(windows) == 16
    assert all(w.is_linf_connected() for w in windows)
    assert [w.get_start() for w in windows] == list(range(16))


@pytest.mark.parametrize("k", [0, 9])
def test_window_length_out_of_range(box2, k):
    with pytest.raises(ValueError):
        intervals_of_length(box2, k)


def test_interval_from_sites_wraps_the_cycle(box2):
    cycle = exterior_boundary_cycle(box2)
    interval = interval_from_sites(box2, [cycle[-1], cycle[0], cycle[1]])
    assert interval.get_sites() == (cycle[-1], cycle[0], cycle[1])
    assert interval.get_start() == len(cycle) - 1


def test_interval_from_sites_rejects_gaps(box2):
    cycle = exterior_boundary_cycle(box2)
    with pytest.raises(ValueError):
        interval_from_sites(box2, [cycle[0], cycle[2]])


def test_boundary_bond_sides(box2):
    assert box2.side_of(Bond.between(Site(1, 0), Site(2, 0))) == RIGHT
    assert box2.side_of(Bond.between(Site(0, 0), Site(-1, 0))) == LEFT
    assert box2.side_of(Bond.between(Site(0, 1), Site(0, 2))) == TOP
    assert box2.side_of(Bond.between(Site(0, 0), Site(0, -1))) == BOTTOM
    with pytest.raises(ValueError):
        box2.side_of(Bond.between(Site(0, 0), Site(1, 0)))


def test_dual_bond_round_trip():
    bond = Bond.between(Site(1, 0), Site(0, 0))
    assert bond_of(dual_of(bond)) == bond
    assert dual_of(bond).is_horizontal() != bond.is_horizontal()
