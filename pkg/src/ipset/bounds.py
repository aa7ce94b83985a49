"""Bound formulas, lemma checks and a replay of the semi-general lower bound.

Every accept/reject decision here is an integer inequality with the
radicals cleared:

* ``p >= (n/5)**(5/4)``         <=>  ``5**5 * p**4 >= n**5``
* ``m <= p**(2/5)``             <=>  ``m**5 <= p**2``
* ``2 p**(4/5) <= q < 2 p**(4/5) + 1`` <=> ``q`` least with ``q**5 >= 32 * p**4``

Floats only show up in :func:`bound_table`, which is for display.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DegenerateTriangle, InvalidParameter, NoUnitDistance, PreconditionViolated
from .exact import (
    ExtremalReport,
    Point,
    PointSet,
    PositionClass,
    collinear,
    dist_sq,
    distance_matrix,
    extremal_distances,
    reframe,
    validate,
)

REL_TOL = 1e-9


def theorem_bound_holds(n: int, p: int) -> bool:
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    return 5**5 * p**4 >= n**5


def cube_root_bound_holds(n: int, min_dist: int) -> bool:
    return min_dist**3 >= n


class CollinearLog(enum.Enum):
    """Readings of ``log 2(1+eps)`` in the collinear-points exponent."""

    LOG_OF_TWICE = "log(2(1+eps))"
    LOG2 = "log2(1+eps)"


@dataclass(frozen=True)
class BoundReport:
    n: int
    theorem_bound: float
    linear_bound: float
    min_dist_bound: float
    remark_bound: float
    upper_bound: float
    collinear_bound: float


def _log(v, base):
    return math.log(v) if base is None else math.log(v, base)


def bound_row(
    n: int,
    c2: float = 1.0,
    c3: float = 1.0,
    delta: float = 1.0,
    epsilon: float = 1.0,
    log_base: Optional[float] = None,
    collinear_log: CollinearLog = CollinearLog.LOG_OF_TWICE,
) -> BoundReport:
    if delta <= 0:
        raise InvalidParameter(f"delta must be positive, got {delta}")
    if epsilon <= 0:
        raise InvalidParameter(f"epsilon must be positive, got {epsilon}")
    if n < 3:
        raise InvalidParameter(f"n must be at least 3, got {n}")
    loglog = _log(_log(n, log_base), log_base)
    if collinear_log is CollinearLog.LOG_OF_TWICE:
        denom = 4 * _log(2 * (1 + epsilon), log_base)
    else:
        denom = 4 * math.log2(1 + epsilon)
    return BoundReport(
        n=n,
        theorem_bound=(n / 5) ** 1.25,
        linear_bound=5 * n / 11,
        min_dist_bound=n ** (1 / 3),
        remark_bound=c3 * n ** (7 / 6),
        upper_bound=n ** (c2 * loglog),
        collinear_bound=n ** (delta / denom * loglog),
    )


def bound_table(n_from: int, n_to: int, c2=1.0, c3=1.0, delta=1.0, epsilon=1.0, **kw) -> list[BoundReport]:
    if not 3 <= n_from <= n_to:
        raise InvalidParameter(f"need 3 <= n_from <= n_to, got {n_from}..{n_to}")
    return [bound_row(n, c2, c3, delta, epsilon, **kw) for n in range(n_from, n_to + 1)]


def min_height_margin(a: int, b: int, c: int) -> int:
    """``16 A**2 - c**2 (4a - 1)`` for the triangle with sides ``a <= b <= c``.

    Non-negative exactly when the least height ``2A/c`` is at least
    ``sqrt(a - 1/4)``.
    """
    a, b, c = sorted((a, b, c))
    if a < 1 or a + b <= c:
        raise DegenerateTriangle(f"({a}, {b}, {c}) is not a nondegenerate triangle")
    area16 = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)
    return area16 - c * c * (4 * a - 1)


def min_height_check(a: int, b: int, c: int) -> bool:
    return min_height_margin(a, b, c) >= 0


def cross_membership(N: Point, M1: Point, M2: Point, k: int) -> bool:
    """Is ``N`` on the line ``M1 M2`` or on the perpendicular bisector of ``M1 M2``?"""
    if M1 == M2:
        raise ValueError("cross needs two distinct points")
    return collinear(N, M1, M2) or dist_sq(N, M1, k) == dist_sq(N, M2, k)


def _require_valid(S: PointSet, semi: bool, min_n: int):
    if S.n < min_n:
        raise PreconditionViolated(f"needs n >= {min_n}, got n = {S.n}")
    report = validate(S)
    if not report.valid:
        raise PreconditionViolated("not an integral point set: " + "; ".join(report.problems()))
    if semi and report.position < PositionClass.SEMI_GENERAL:
        raise PreconditionViolated("set has a collinear triple")
    return report


def hyperbola_count_check(S: PointSet) -> bool:
    _require_valid(S, semi=True, min_n=4)
    ext = extremal_distances(S)
    return ext.closest >= 2 and ext.m >= 2 and S.n <= 4 * ext.closest * ext.m


@dataclass
class DistanceOneReport:
    conforming: bool
    unit_pairs: list[tuple[int, int]]
    violations: list[str] = field(default_factory=list)


def distance_one_structure_check(S: PointSet) -> DistanceOneReport:
    """Every unit pair must sit on a line holding ``n - 1`` points, the last
    point lying on the perpendicular bisector of that pair."""
    M = distance_matrix(S)
    units = [(i, j) for i, j in itertools.combinations(range(S.n), 2) if M[i][j] == 1]
    if not units:
        raise NoUnitDistance("no pair at distance 1")
    violations = []
    for i, j in units:
        off = [t for t in range(S.n) if t not in (i, j) and not collinear(S[i], S[j], S[t])]
        if len(off) != 1:
            violations.append(f"unit pair ({i},{j}): {len(off)} points off its line, expected 1")
            continue
        apex = S[off[0]]
        if dist_sq(apex, S[i], S.k) != dist_sq(apex, S[j], S.k):
            violations.append(f"unit pair ({i},{j}): point {off[0]} not on the perpendicular bisector")
    return DistanceOneReport(not violations, units, violations)


def canonical_frame(S: PointSet, ext: Optional[ExtremalReport] = None) -> PointSet:
    """Copy of ``S`` with its first diameter pair at ``(0, 0)`` and ``(p, 0)``.

    Point order is kept, so indices from ``extremal_distances`` stay valid.
    """
    if ext is None:
        ext = extremal_distances(S)
    i, j = ext.diameter_pair
    return reframe(S, i, j)


def square_container_check(S: PointSet) -> bool:
    _require_valid(S, semi=False, min_n=3)
    ext = extremal_distances(S)
    F = canonical_frame(S, ext)
    p = ext.p
    xs = [P.x for P in F.points]
    rs = [P.r for P in F.points]
    dr = max(rs) - min(rs)
    return max(xs) - min(xs) <= p and F.k * dr * dr <= p * p


def strip_count(p: int) -> int:
    """Least ``q`` with ``q**5 >= 32 * p**4``."""
    target = 32 * p**4
    q = max(1, int(round(2 * p**0.8)) - 2)
    while q**5 >= target and q > 1:
        q -= 1
    while q**5 < target:
        q += 1
    return q


@dataclass
class StripReport:
    q: int
    strip_counts: list[int]
    passed: bool


def _strip_report(F: PointSet, p: int, skip: int) -> StripReport:
    q = strip_count(p)
    counts = [0] * q
    for idx, P in enumerate(F.points):
        if idx == skip:
            continue
        # strips [i p/q, (i+1) p/q), the last one closed at p
        s = min(math.floor(P.x * q / p), q - 1)
        counts[s] += 1
    return StripReport(q, counts, all(c <= 2 for c in counts))


def strip_partition_check(S: PointSet) -> StripReport:
    _require_valid(S, semi=True, min_n=4)
    ext = extremal_distances(S)
    if ext.m**5 <= ext.p**2:
        raise PreconditionViolated(f"m^5 = {ext.m**5} <= p^2 = {ext.p**2}: strip branch does not apply")
    return _strip_report(canonical_frame(S, ext), ext.p, ext.closest_pair[0])


class Branch(enum.Enum):
    HYPERBOLA = "hyperbola"
    STRIP = "strip"


@dataclass(frozen=True)
class Inequality:
    name: str
    lhs: int
    relation: str
    rhs: int

    @property
    def passed(self) -> bool:
        return {
            "<=": self.lhs <= self.rhs,
            "<": self.lhs < self.rhs,
            ">=": self.lhs >= self.rhs,
            ">": self.lhs > self.rhs,
        }[self.relation]

    def __str__(self):
        mark = "pass" if self.passed else "FAIL"
        return f"{self.name}: {self.lhs} {self.relation} {self.rhs} [{mark}]"


@dataclass
class ProofTrace:
    n: int
    p: int
    report: ExtremalReport
    branch: Branch
    q: Optional[int] = None
    strip_counts: list[int] = field(default_factory=list)
    inequalities: list[Inequality] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(iq.passed for iq in self.inequalities)


def replay_theorem_proof(S: PointSet) -> ProofTrace:
    """Walk both branches of the ``(n/5)**(5/4)`` argument on a concrete set."""
    _require_valid(S, semi=True, min_n=4)
    ext = extremal_distances(S)
    strips = None
    if ext.m**5 > ext.p**2:
        strips = _strip_report(canonical_frame(S, ext), ext.p, ext.closest_pair[0])
    return trace_from_report(S.n, ext, strips)


def trace_from_report(n: int, ext: ExtremalReport, strips: Optional[StripReport] = None) -> ProofTrace:
    """The inequality chain for given extremal distances.

    ``strips`` is required when the strip branch applies (``m**5 > p**2``).
    """
    p, m, d12 = ext.p, ext.m, ext.closest
    ineq = []
    if m**5 <= p**2:
        trace = ProofTrace(n, p, ext, Branch.HYPERBOLA)
        ineq.append(Inequality("m^5 <= p^2 (m <= p^(2/5))", m**5, "<=", p**2))
        ineq.append(Inequality("|M1M2| >= 2", d12, ">=", 2))
        ineq.append(Inequality("|M3M4| >= 2", m, ">=", 2))
        ineq.append(Inequality("n <= 4 |M1M2| |M3M4|", n, "<=", 4 * d12 * m))
        ineq.append(Inequality("n^5 <= 4^5 p^4 (n <= 4 p^(4/5))", n**5, "<=", 4**5 * p**4))
    else:
        if strips is None:
            raise PreconditionViolated("strip branch needs a strip report")
        trace = ProofTrace(n, p, ext, Branch.STRIP)
        q = strips.q
        trace.q = q
        trace.strip_counts = list(strips.strip_counts)
        ineq.append(Inequality("m^5 > p^2 (m > p^(2/5))", m**5, ">", p**2))
        ineq.append(Inequality("q^5 >= 32 p^4 (q >= 2 p^(4/5))", q**5, ">=", 32 * p**4))
        ineq.append(Inequality("(q-1)^5 < 32 p^4 (q < 2 p^(4/5) + 1)", (q - 1) ** 5, "<", 32 * p**4))
        ineq.append(Inequality("max points per strip <= 2", max(strips.strip_counts), "<=", 2))
        ineq.append(Inequality("n <= 2q + 1", n, "<=", 2 * q + 1))
        ineq.append(Inequality("p >= 4", p, ">=", 4))
        ineq.append(Inequality("n^5 <= 5^5 p^4 (n <= 5 p^(4/5))", n**5, "<=", 5**5 * p**4))
    ineq.append(Inequality("5^5 p^4 >= n^5 (p >= (n/5)^(5/4))", 5**5 * p**4, ">=", n**5))
    trace.inequalities = ineq
    return trace
