"""Independent reference computations used by the test suite.

Nothing here touches the clique search or its scaled-integer arithmetic.
"""

import itertools
import math
from fractions import Fraction

import sympy

from ipset.enumeration import base_pair, canonicalize, candidate_points
from ipset.exact import Point, PointSet, PositionClass


def isqrt_float_oracle(v):
    """Square root of ``v`` if it is a square: float guess, then exact fix-up."""
    s = int(math.sqrt(v))
    while s * s > v:
        s -= 1
    while (s + 1) * (s + 1) <= v:
        s += 1
    return s if s * s == v else None


def sym_point(P, k):
    return (sympy.Rational(P.x.numerator, P.x.denominator),
            sympy.Rational(P.r.numerator, P.r.denominator) * sympy.sqrt(k))


def sym_concyclic_det(points, k):
    rows = []
    for P in points:
        x, y = sym_point(P, k)
        rows.append([x**2 + y**2, x, y, 1])
    return sympy.simplify(sympy.Matrix(rows).det())


def sym_distance(P, Pk, Q, Qk):
    (x1, y1), (x2, y2) = sym_point(P, Pk), sym_point(Q, Qk)
    return sympy.sqrt(sympy.expand((x1 - x2) ** 2 + (y1 - y2) ** 2))


def float_point(P, k):
    return float(P.x), float(P.r) * math.sqrt(k)


def float_dist(P, Q, k):
    (x1, y1), (x2, y2) = float_point(P, k), float_point(Q, k)
    return math.hypot(x1 - x2, y1 - y2)


def _exact_int_dist(P, Q, k):
    d2 = (P.x - Q.x) ** 2 + k * (P.r - Q.r) ** 2
    if d2.denominator != 1:
        return None
    return isqrt_float_oracle(d2.numerator)


def candidate_distance(c1, c2):
    """Integer distance between two pool candidates, or None.

    Off-line candidates of different characteristics: the squared distance is
    ``A + B sqrt(k1 k2)`` with ``B = -2 r1 r2 != 0`` and ``k1 k2`` not a
    square, hence irrational.
    """
    if c1.on_line or c2.on_line or c1.k == c2.k:
        k = c2.k if c1.on_line else c1.k
        return _exact_int_dist(c1.point, c2.point, k)
    assert c1.point.r != 0 and c2.point.r != 0
    return None


def brute_collinear(P, Q, R):
    return (Q.x - P.x) * (R.r - P.r) - (R.x - P.x) * (Q.r - P.r) == 0


def brute_concyclic(pts, k):
    # 4x4 lifted determinant evaluated by Leibniz expansion
    rows = [[P.x**2 + k * P.r**2, P.x, P.r, Fraction(1)] for P in pts]
    total = Fraction(0)
    for perm in itertools.permutations(range(4)):
        sign = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(4):
            term *= rows[i][perm[i]]
        total += term
    if total != 0:
        return False
    P, Q = pts[0], pts[1]
    return not all(brute_collinear(P, Q, R) for R in pts[2:])


def brute_position(S):
    if any(brute_collinear(*t) for t in itertools.combinations(S.points, 3)):
        return PositionClass.ANY
    if any(brute_concyclic(q, S.k) for q in itertools.combinations(S.points, 4)):
        return PositionClass.SEMI_GENERAL
    return PositionClass.GENERAL


def naive_sets(d, n_max):
    """Every integral set of diameter exactly ``d`` with up to ``n_max`` points,
    by plain subset enumeration over the candidate pool.

    Returns ``{n: {constraint: set of canonical PointSets}}``.
    """
    pool = candidate_points(d).all()
    O, A = base_pair(d)
    m = len(pool)
    ok = [[False] * m for _ in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        dist = candidate_distance(pool[i], pool[j])
        ok[i][j] = ok[j][i] = dist is not None and dist <= d
    out = {}
    for n in range(3, n_max + 1):
        per = {c: set() for c in PositionClass}
        for combo in itertools.combinations(range(m), n - 2):
            if not all(ok[i][j] for i, j in itertools.combinations(combo, 2)):
                continue
            cands = [pool[i] for i in combo]
            off = [c for c in cands if not c.on_line]
            if not off:
                continue
            S = PointSet(off[0].k, (O, A) + tuple(c.point for c in cands))
            cls = brute_position(S)
            canon = canonicalize(S)
            for c in PositionClass:
                if cls >= c:
                    per[c].add(canon)
        out[n] = per
    return out


def distance_multiset_matrix(S):
    n = S.n
    return [[_exact_int_dist(S[i], S[j], S.k) if i != j else 0 for j in range(n)] for i in range(n)]


def congruent(S, T):
    """Brute force over permutations: equal distance matrices means congruent."""
    if S.n != T.n:
        return False
    A, B = distance_multiset_matrix(S), distance_multiset_matrix(T)
    n = S.n
    for perm in itertools.permutations(range(n)):
        if all(A[i][j] == B[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            return True
    return False


def integer_triangles(c_max):
    for c in range(1, c_max + 1):
        for b in range(1, c + 1):
            for a in range(1, b + 1):
                if a + b > c:
                    yield a, b, c


def facher_legs_brute(h, x_max):
    return sorted(x for x in range(0, x_max + 1) if isqrt_float_oracle(x * x + h * h) is not None)


def as_point_set(k, coords):
    return PointSet(k, tuple(Point(*c) for c in coords))
