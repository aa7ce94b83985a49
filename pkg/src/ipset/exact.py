"""Exact arithmetic kernel for planar integral point sets.

Every point lives in the plane as ``(x, r * sqrt(k))`` where ``x`` and ``r``
are rationals and ``k`` is a squarefree positive integer shared by the whole
set.  With that normal form all distance, collinearity and concyclicity tests
reduce to rational arithmetic, so no predicate ever touches a float.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import DegenerateInput, FactorizationLimitExceeded, PreconditionViolated

TRIAL_DIVISION_BOUND = 10**6


def is_perfect_square(v: int) -> Optional[int]:
    if v < 0:
        raise ValueError(f"is_perfect_square needs v >= 0, got {v}")
    s = math.isqrt(v)
    return s if s * s == v else None


@lru_cache(maxsize=1 << 16)
def squarefree_split(v: int, bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, int]:
    """Write a positive integer as ``s**2 * k`` with ``k`` squarefree.

    Trial division runs up to ``bound``.  A leftover cofactor ``c`` is still
    classified when that is provable: a perfect square, or ``c < bound**3``
    (then ``c`` is a prime, a product of two distinct primes, or a prime
    square, all of which the square test settles).
    """
    if v <= 0:
        raise ValueError(f"squarefree_split needs v > 0, got {v}")
    s, k = 1, 1
    c = v
    p = 2
    while p * p <= c and p <= bound:
        if c % p == 0:
            e = 0
            while c % p == 0:
                c //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                k *= p
        p += 1 if p == 2 else 2
    if c > 1:
        root = is_perfect_square(c)
        if root is not None:
            s *= root
        elif p * p > c or c < bound**3:
            k *= c
        else:
            raise FactorizationLimitExceeded(
                f"cofactor {c} of {v} is beyond trial division up to {bound}"
            )
    return s, k


def squarefree_decompose(q, bound: int = TRIAL_DIVISION_BOUND) -> tuple[Fraction, int]:
    """Return ``(r, k)`` with ``q == r**2 * k``, ``r > 0`` and ``k`` squarefree."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"squarefree_decompose needs q > 0, got {q}")
    # q = (num * den) / den**2
    s, k = squarefree_split(q.numerator * q.denominator, bound)
    return Fraction(s, q.denominator), k


def is_squarefree(k: int) -> bool:
    return k >= 1 and squarefree_split(k)[0] == 1


@dataclass(frozen=True, order=True)
class Point:
    """Plane point ``(x, r * sqrt(k))``; ``k`` belongs to the owning set."""

    x: Fraction
    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "r", Fraction(self.r))

    def mirrored(self) -> "Point":
        return Point(self.x, -self.r)

    def __repr__(self):
        return f"Point({self.x}, {self.r})"


class PositionClass(enum.IntEnum):
    ANY = 0
    SEMI_GENERAL = 1
    GENERAL = 2

    @classmethod
    def parse(cls, text: str) -> "PositionClass":
        aliases = {
            "any": cls.ANY,
            "semi": cls.SEMI_GENERAL,
            "semi-general": cls.SEMI_GENERAL,
            "semigeneral": cls.SEMI_GENERAL,
            "general": cls.GENERAL,
        }
        try:
            return aliases[text.strip().lower().replace("_", "-")]
        except KeyError:
            raise ValueError(f"unknown position class {text!r}") from None

    @property
    def label(self) -> str:
        return {0: "any", 1: "semi-general", 2: "general"}[int(self)]


@dataclass(frozen=True)
class PointSet:
    k: int
    points: tuple[Point, ...] = field(default=())

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not is_squarefree(self.k):
            raise ValueError(f"characteristic must be squarefree, got {self.k}")

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def key(self):
        return (self.k, self.n, self.points)


def dist_sq(P: Point, Q: Point, k: int) -> Fraction:
    dx = P.x - Q.x
    dr = P.r - Q.r
    return dx * dx + k * dr * dr


def integral_distance(P: Point, Q: Point, k: int) -> Optional[int]:
    d2 = dist_sq(P, Q, k)
    if d2.denominator != 1 or d2 == 0:
        return None
    return is_perfect_square(d2.numerator)


def rational_distance(P: Point, Q: Point, k: int) -> Optional[Fraction]:
    d2 = dist_sq(P, Q, k)
    num = is_perfect_square(d2.numerator)
    den = is_perfect_square(d2.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _cross(P1: Point, P2: Point, P3: Point) -> Fraction:
    # orientation determinant divided by sqrt(k)
    return (P2.x - P1.x) * (P3.r - P1.r) - (P3.x - P1.x) * (P2.r - P1.r)


def collinear(P1: Point, P2: Point, P3: Point) -> bool:
    return _cross(P1, P2, P3) == 0


def incircle_det(P1: Point, P2: Point, P3: Point, P4: Point, k: int) -> Fraction:
    """Circle determinant of the four points with the ``sqrt(k)`` factor removed.

    Rows ``(x^2 + k r^2, x, r, 1)``, reduced to 3x3 by subtracting ``P4``.
    """
    rows = []
    for P in (P1, P2, P3):
        dx = P.x - P4.x
        dr = P.r - P4.r
        rows.append((dx * dx + k * dr * dr, dx, dr))
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def concyclic(P1: Point, P2: Point, P3: Point, P4: Point, k: int) -> bool:
    pts = (P1, P2, P3, P4)
    if len(set(pts)) < 4:
        raise DegenerateInput("concyclic needs four distinct points")
    if incircle_det(*pts, k) != 0:
        return False
    # a vanishing determinant also covers four points on one line
    return not all(collinear(P1, P2, P) for P in (P3, P4))


def all_collinear(points: Sequence[Point]) -> bool:
    pts = list(dict.fromkeys(points))
    if len(pts) < 3:
        return True
    P, Q = pts[0], pts[1]
    return all(collinear(P, Q, R) for R in pts[2:])


def distance_matrix(S: PointSet) -> list[list[Optional[int]]]:
    n = S.n
    M: list[list[Optional[int]]] = [[0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        M[i][j] = M[j][i] = integral_distance(S[i], S[j], S.k)
    return M


def _integral_matrix(S: PointSet) -> list[list[int]]:
    M = distance_matrix(S)
    for i, j in itertools.combinations(range(S.n), 2):
        if M[i][j] is None:
            raise PreconditionViolated(f"distance between points {i} and {j} is not integral")
    return M  # type: ignore[return-value]


def diameter(S: PointSet) -> int:
    M = _integral_matrix(S)
    return max(max(row) for row in M)


def min_distance(S: PointSet) -> int:
    M = _integral_matrix(S)
    return min(M[i][j] for i, j in itertools.combinations(range(S.n), 2))


@dataclass(frozen=True)
class ExtremalReport:
    p: int
    diameter_pair: tuple[int, int]
    closest_pair: tuple[int, int]
    closest: int
    m: int
    second_pair: tuple[int, int]


def _extreme_pair(M, indices, largest=False):
    # combinations() yields pairs in lexicographic order; keep the first winner
    sign = -1 if largest else 1
    best = None
    for i, j in itertools.combinations(indices, 2):
        if best is None or sign * M[i][j] < sign * best[0]:
            best = (M[i][j], (i, j))
    return best


def extremal_distances(S: PointSet) -> ExtremalReport:
    """Diameter, a closest pair (M1, M2) and the closest pair avoiding M1.

    Ties go to the lexicographically smallest index pair; M1 is the first
    index of the closest pair.
    """
    if S.n < 3:
        raise PreconditionViolated("extremal_distances needs at least 3 points")
    M = _integral_matrix(S)
    idx = range(S.n)
    p, dpair = _extreme_pair(M, idx, largest=True)
    closest, cpair = _extreme_pair(M, idx)
    m1 = cpair[0]
    m, spair = _extreme_pair(M, [i for i in idx if i != m1])
    return ExtremalReport(p, dpair, cpair, closest, m, spair)


def has_collinear_triple(S: PointSet) -> bool:
    return any(collinear(*t) for t in itertools.combinations(S.points, 3))


def has_concyclic_quadruple(S: PointSet) -> bool:
    return any(concyclic(*q, S.k) for q in itertools.combinations(S.points, 4))


def classify_position(S: PointSet) -> PositionClass:
    if has_collinear_triple(S):
        return PositionClass.ANY
    if has_concyclic_quadruple(S):
        return PositionClass.SEMI_GENERAL
    return PositionClass.GENERAL


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    non_integral: tuple[tuple[int, int], ...]
    duplicates: tuple[tuple[int, int], ...]
    all_collinear: bool
    position: Optional[PositionClass]

    def problems(self) -> list[str]:
        out = []
        for i, j in self.duplicates:
            out.append(f"points {i} and {j} coincide")
        for i, j in self.non_integral:
            out.append(f"distance {i}-{j} is not an integer")
        if self.all_collinear:
            out.append("set is situated on a straight line")
        return out


def validate(S: PointSet) -> ValidationReport:
    dup = []
    bad = []
    for i, j in itertools.combinations(range(S.n), 2):
        if S[i] == S[j]:
            dup.append((i, j))
        elif integral_distance(S[i], S[j], S.k) is None:
            bad.append((i, j))
    flat = all_collinear(S.points)
    position = None if dup else classify_position(S)
    return ValidationReport(
        valid=not dup and not bad and not flat,
        non_integral=tuple(bad),
        duplicates=tuple(dup),
        all_collinear=flat,
        position=position,
    )


def reframe(S: PointSet, i: int, j: int) -> PointSet:
    """Rigid motion putting ``S[i]`` at the origin and ``S[j]`` on the positive x-axis.

    Needs ``|S[i] S[j]|`` rational.  The motion keeps orientation, so the
    characteristic is unchanged and every coordinate stays rational.
    """
    P, Q = S[i], S[j]
    p = rational_distance(P, Q, S.k)
    if p is None or p == 0:
        raise PreconditionViolated(f"|S[{i}] S[{j}]| is not a positive rational")
    qx, qr = Q.x - P.x, Q.r - P.r
    out = []
    for R in S.points:
        rx, rr = R.x - P.x, R.r - P.r
        out.append(Point((rx * qx + S.k * rr * qr) / p, (qx * rr - rx * qr) / p))
    return PointSet(S.k, tuple(out))


def mirror(S: PointSet) -> PointSet:
    return PointSet(S.k, tuple(P.mirrored() for P in S.points))


def make_set(k: int, coords: Iterable) -> PointSet:
    return PointSet(k, tuple(Point(*c) for c in coords))
