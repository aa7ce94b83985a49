"""Candidate points for a fixed diameter.

With the diameter pair pinned at ``O = (0, 0)`` and ``A = (d, 0)``, every
further point of a set of diameter ``d`` sits at integer distances
``a, b <= d`` from ``O`` and ``A``.  The pool below is that finite universe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import (
    Point,
    PointSet,
    integral_distance,
    reframe,
    squarefree_decompose,
    TRIAL_DIVISION_BOUND,
)


@dataclass(frozen=True)
class Candidate:
    point: Point
    a: int
    b: int
    k: int
    on_line: bool

    @property
    def x(self) -> Fraction:
        return self.point.x

    @property
    def r(self) -> Fraction:
        return self.point.r

    def sort_key(self):
        return (self.k, self.point.x, self.point.r)


@dataclass
class CandidatePool:
    d: int
    by_characteristic: dict[int, list[Candidate]] = field(default_factory=dict)
    on_line: list[Candidate] = field(default_factory=list)

    def off_line(self) -> list[Candidate]:
        return [c for k in sorted(self.by_characteristic) for c in self.by_characteristic[k]]

    def all(self) -> list[Candidate]:
        return self.on_line + self.off_line()

    def __len__(self):
        return len(self.on_line) + sum(len(v) for v in self.by_characteristic.values())


def candidate_points(d: int, bound: int = TRIAL_DIVISION_BOUND) -> CandidatePool:
    if d < 1:
        raise ValueError(f"diameter must be positive, got {d}")
    pool = CandidatePool(d)
    seen = set()
    for a, b in itertools.product(range(1, d + 1), repeat=2):
        x = Fraction(d * d + a * a - b * b, 2 * d)
        y2 = a * a - x * x
        if y2 < 0:
            continue
        if y2 == 0:
            # only a + b == d can land here since |a - b| < d
            c = Candidate(Point(x, 0), a, b, 1, True)
            pool.on_line.append(c)
            continue
        r, k = squarefree_decompose(y2, bound)
        for sign in (1, -1):
            c = Candidate(Point(x, sign * r), a, b, k, False)
            pool.by_characteristic.setdefault(k, []).append(c)
    for c in pool.all():
        key = (c.k, c.point)
        assert key not in seen, f"duplicate candidate {c}"
        seen.add(key)
    pool.on_line.sort(key=Candidate.sort_key)
    for cands in pool.by_characteristic.values():
        cands.sort(key=Candidate.sort_key)
    return pool


def base_pair(d: int) -> tuple[Point, Point]:
    return Point(0, 0), Point(d, 0)


def _framed_images(S: PointSet, pairs):
    for i, j in pairs:
        F = reframe(S, i, j)
        yield tuple(sorted(F.points))
        yield tuple(sorted(P.mirrored() for P in F.points))


def canonicalize(S: PointSet) -> PointSet:
    """Least congruent copy of ``S`` with a diameter pair at ``(0,0)``, ``(p,0)``.

    All ordered diameter-realizing pairs and both reflections are tried, so
    congruent sets always share one canonical form.
    """
    dists = {}
    for i, j in itertools.combinations(range(S.n), 2):
        dists[i, j] = integral_distance(S[i], S[j], S.k)
    if any(v is None for v in dists.values()):
        raise ValueError("canonicalize needs an integral point set")
    p = max(dists.values())
    pairs = [(i, j) for (i, j), v in dists.items() if v == p]
    pairs += [(j, i) for i, j in pairs]
    best = min(_framed_images(S, pairs))
    return PointSet(S.k, best)


def is_canonical(S: PointSet) -> bool:
    return canonicalize(S) == S
