import itertools
from fractions import Fraction as F

import pytest
import sympy

from ipset.enumeration import canonicalize, candidate_points, is_canonical
from ipset.exact import Point, PointSet, PositionClass, integral_distance, mirror, reframe
from ipset.search import find_sets

from oracles import congruent, sym_point


def _lookup(pool, x, r, k):
    return [c for c in pool.by_characteristic.get(k, []) if c.x == x and c.r == r]


def test_pool_d4_examples():
    pool = candidate_points(4)
    for sign in (1, -1):
        (c,) = _lookup(pool, F(2), sign * F(2), 3)
        assert (c.a, c.b) == (4, 4)
        (c,) = _lookup(pool, F(1, 2), sign * F(1, 2), 15)
        assert (c.a, c.b) == (2, 4)
    assert [(c.x, c.a, c.b) for c in pool.on_line] == [(1, 1, 3), (2, 2, 2), (3, 3, 1)]


def test_pool_d1_is_equilateral_apex():
    pool = candidate_points(1)
    assert pool.on_line == []
    assert sorted((c.x, c.r, c.k) for c in pool.off_line()) == [
        (F(1, 2), F(-1, 2), 3),
        (F(1, 2), F(1, 2), 3),
    ]


@pytest.mark.parametrize("d", range(1, 21))
def test_pool_invariants(d):
    pool = candidate_points(d)
    O, A = Point(0, 0), Point(d, 0)
    off = pool.off_line()
    assert len(off) <= 2 * d * d
    keys = [(c.k, c.point) for c in pool.all()]
    assert len(keys) == len(set(keys))
    for c in pool.all():
        assert integral_distance(c.point, O, c.k) == c.a
        assert integral_distance(c.point, A, c.k) == c.b
        assert 1 <= c.a <= d and 1 <= c.b <= d
        assert c.on_line == (c.r == 0)
        assert c.x == F(d * d + c.a * c.a - c.b * c.b, 2 * d)
    mirrored = {(c.k, c.point.mirrored()) for c in off}
    assert mirrored == {(c.k, c.point) for c in off}
    assert [c.sort_key() for c in pool.all()[len(pool.on_line):]] == sorted(c.sort_key() for c in off)


@pytest.mark.parametrize("d", range(1, 21))
def test_pool_contains_every_integer_triangle_apex(d):
    pool = candidate_points(d)
    points = {}
    for c in pool.all():
        points.setdefault(c.x, []).append(c)
    for a in range(1, d + 1):
        for b in range(1, d + 1):
            if a + b <= d:
                continue
            x = sympy.Rational(d * d + a * a - b * b, 2 * d)
            y = sympy.sqrt(a * a - x * x)
            hits = [c for c in points.get(F(int(x.p), int(x.q)), []) if sym_point(c.point, c.k)[1] == y]
            assert len(hits) == 1, (d, a, b)


def test_pool_rejects_bad_diameter():
    with pytest.raises(ValueError):
        candidate_points(0)


def test_canonicalize_mirror_and_idempotent():
    for S in find_sets(5, 8, PositionClass.SEMI_GENERAL) + find_sets(4, 8, PositionClass.ANY):
        C = canonicalize(S)
        assert canonicalize(C) == C
        assert canonicalize(mirror(S)) == C
        assert is_canonical(C)
        # any frame on any pair at integral distance gives the same canonical form
        for i, j in itertools.permutations(range(S.n), 2):
            assert canonicalize(reframe(S, i, j)) == C


def test_canonical_form_has_diameter_pair_on_axis():
    for S in find_sets(4, 8, PositionClass.ANY):
        p = max(
            integral_distance(S[i], S[j], S.k) for i, j in itertools.combinations(range(S.n), 2)
        )
        assert Point(0, 0) in S.points and Point(p, 0) in S.points


@pytest.mark.parametrize("d", [4, 6, 8])
def test_congruent_witnesses_collapse(d):
    for constraint in PositionClass:
        for n in (3, 4, 5):
            sets = find_sets(n, d, constraint)
            for S, T in itertools.combinations(sets, 2):
                assert not congruent(S, T)
            # a reflected, re-framed copy of each witness is congruent and canonicalizes back
            for S in sets:
                T = mirror(reframe(S, S.n - 1, 0))
                assert congruent(S, T)
                assert canonicalize(T) == S
