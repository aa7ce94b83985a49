import itertools
import os
from fractions import Fraction as F

import pytest

from ipset.enumeration import Candidate, candidate_points
from ipset.errors import BudgetExceeded
from ipset.exact import Point, PointSet, PositionClass, classify_position, diameter, make_set, validate
from ipset.search import compatible, default_workers, find_all_sets, find_sets, minimal_diameter

from oracles import brute_position, candidate_distance, naive_sets


def test_compatible_examples():
    up = Candidate(Point(2, 2), 4, 4, 3, False)
    down = Candidate(Point(2, -2), 4, 4, 3, False)
    mid = Candidate(Point(2, 0), 2, 2, 1, True)
    assert not compatible(up, down, 4)
    assert not compatible(up, mid, 4)
    left = Candidate(Point(-4, 0), 4, 4, 1, True)
    apex = Candidate(Point(0, 3), 3, 5, 1, False)
    assert compatible(left, apex, 8)
    assert not compatible(left, apex, 4)


def test_compatible_across_characteristics_is_false():
    pool = candidate_points(8)
    ks = sorted(pool.by_characteristic)
    c1 = pool.by_characteristic[ks[0]][0]
    c2 = pool.by_characteristic[ks[1]][0]
    assert not compatible(c1, c2, 8)


@pytest.mark.parametrize("d", [5, 7, 8])
def test_compatible_matches_oracle(d):
    pool = candidate_points(d).all()
    for c1, c2 in itertools.combinations(pool, 2):
        dist = candidate_distance(c1, c2)
        assert compatible(c1, c2, d) == (dist is not None and dist <= d)


def test_find_sets_unit_equilateral():
    (S,) = find_sets(3, 1, PositionClass.SEMI_GENERAL)
    assert S.k == 3
    assert sorted(S.points) == sorted([Point(0, 0), Point(1, 0), Point(F(1, 2), F(-1, 2))])


def test_no_semi_general_quadrilateral_below_four():
    for d in (1, 2, 3):
        assert find_sets(4, d, PositionClass.SEMI_GENERAL) == []


def test_rectangle_found_at_five(rectangle):
    from ipset.enumeration import canonicalize

    assert canonicalize(rectangle) in find_sets(4, 5, PositionClass.SEMI_GENERAL)


def test_first_only_returns_one_of_all():
    every = find_sets(5, 8, PositionClass.SEMI_GENERAL)
    first = find_sets(5, 8, PositionClass.SEMI_GENERAL, all=False)
    assert len(first) == 1 and first[0] in every


def test_find_sets_rejects_small_n():
    with pytest.raises(ValueError):
        find_sets(2, 5)


@pytest.mark.parametrize("d", range(1, 13))
def test_soundness(d):
    for constraint in PositionClass:
        for n in range(3, 7):
            for S in find_sets(n, d, constraint):
                rep = validate(S)
                assert rep.valid
                assert S.n == n
                assert diameter(S) == d
                assert brute_position(S) >= constraint
                assert classify_position(S) == brute_position(S)


@pytest.mark.parametrize("d", range(1, 7))
def test_matches_naive_enumeration_small(d):
    naive = naive_sets(d, 5)
    for n, per in naive.items():
        for constraint, expected in per.items():
            assert set(find_sets(n, d, constraint)) == expected, (d, n, constraint)


def test_minimal_diameter_values():
    assert minimal_diameter(3, PositionClass.ANY).d == 1
    r = minimal_diameter(4, PositionClass.SEMI_GENERAL, 10)
    assert r.d in (4, 5)
    # frozen after the exhaustive run; d = 1..3 are refuted above
    assert r.d == 4 and r.exhausted_up_to == 3
    r = minimal_diameter(4, PositionClass.ANY, 10)
    assert r.d <= 8
    assert r.d == 4


def test_budget_exceeded_carries_progress():
    with pytest.raises(BudgetExceeded) as info:
        minimal_diameter(4, PositionClass.SEMI_GENERAL, d_max=3)
    assert info.value.exhausted_up_to == 3


def test_monotone_in_n_and_constraint(semi_minimal):
    ds = [semi_minimal[n].d for n in range(4, 8)]
    assert ds == sorted(ds)
    for n in range(3, 6):
        any_d = minimal_diameter(n, PositionClass.ANY, 60).d
        semi_d = semi_minimal[n].d
        assert any_d <= semi_d
        if n <= 4:
            assert semi_d <= minimal_diameter(n, PositionClass.GENERAL, 60).d


def test_workers_do_not_change_results():
    serial = find_sets(5, 8, PositionClass.ANY)
    parallel = find_sets(5, 8, PositionClass.ANY, workers=3)
    assert serial == parallel
    assert find_sets(5, 8, PositionClass.ANY) == serial


def test_find_all_sets_sizes():
    sets = find_all_sets(8)
    assert sorted(sets) == [3, 4, 5, 6]
    for n, group in sets.items():
        assert all(S.n == n for S in group)


def test_default_workers_env(monkeypatch):
    monkeypatch.setenv("IPSET_THREADS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("IPSET_THREADS", "0")
    with pytest.raises(ValueError):
        default_workers()
    monkeypatch.delenv("IPSET_THREADS")
    assert default_workers() == (os.cpu_count() or 1)
