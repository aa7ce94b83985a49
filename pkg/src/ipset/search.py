"""Exhaustive search for integral point sets of a given diameter.

A set of diameter exactly ``d`` is a clique in the compatibility graph over
the candidate pool that also contains the base pair ``O``, ``A``.  Off-line
candidates of different characteristics are never at integral distance, so
each characteristic class (plus the shared on-line points) is searched on its
own.

Inside a class, coordinates are scaled by ``2d``: a candidate becomes the
integer pair ``(X, s)`` standing for ``(X / 2d, s * sqrt(k) / 2d)``, and all
tests below are plain integer arithmetic.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .enumeration import Candidate, CandidatePool, base_pair, canonicalize, candidate_points
from .errors import BudgetExceeded
from .exact import Point, PointSet, PositionClass, integral_distance


def compatible(P: Candidate, Q: Candidate, d: int) -> bool:
    if P.point == Q.point and P.k == Q.k:
        raise ValueError("compatible needs two distinct candidates")
    if not (P.on_line or Q.on_line) and P.k != Q.k:
        return False
    k = Q.k if P.on_line else P.k
    dist = integral_distance(P.point, Q.point, k)
    return dist is not None and dist <= d


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _color_bound(P, adj):
    # greedy colouring of the subgraph induced by P; #colours bounds the clique size
    colors = 0
    uncolored = P
    while uncolored:
        colors += 1
        avail = uncolored
        while avail:
            v = (avail & -avail).bit_length() - 1
            uncolored &= ~(1 << v)
            avail &= ~(1 << v) & ~adj[v]
    return colors


class _ClassSearch:
    def __init__(self, d, k, cands, target, constraint):
        self.d = d
        self.k = k
        self.target = target
        self.constraint = constraint
        two_d = 2 * d
        self.scale2 = two_d * two_d
        pts = []
        for c in cands:
            X = c.point.x * two_d
            s = c.point.r * two_d
            assert X.denominator == 1 and s.denominator == 1
            pts.append((X.numerator, s.numerator))
        m = len(pts)
        adj = [0] * m
        for i in range(m):
            for j in range(i + 1, m):
                if self._edge(pts[i], pts[j]):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        # off-line points first, then decreasing degree
        order = sorted(range(m), key=lambda i: (cands[i].on_line, -bin(adj[i]).count("1"), i))
        pos = {old: new for new, old in enumerate(order)}
        self.cands = [cands[i] for i in order]
        self.pts = [pts[i] for i in order]
        self.adj = [0] * m
        for old in range(m):
            mask = 0
            for nb in _bits(adj[old]):
                mask |= 1 << pos[nb]
            self.adj[pos[old]] = mask
        self.base = [(0, 0), (two_d * d, 0)]
        self.off_mask = sum(1 << i for i, c in enumerate(self.cands) if not c.on_line)

    def _edge(self, p, q):
        dx = p[0] - q[0]
        ds = p[1] - q[1]
        v = dx * dx + self.k * ds * ds
        if v == 0 or v % self.scale2:
            return False
        D2 = v // self.scale2
        D = math.isqrt(D2)
        return D * D == D2 and D <= self.d

    @staticmethod
    def _collinear(p, q, u):
        return (q[0] - p[0]) * (u[1] - p[1]) - (u[0] - p[0]) * (q[1] - p[1]) == 0

    def _concyclic(self, p1, p2, p3, p4):
        rows = []
        for p in (p1, p2, p3):
            dx = p[0] - p4[0]
            ds = p[1] - p4[1]
            rows.append((dx * dx + self.k * ds * ds, dx, ds))
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g) == 0

    def _filter(self, placed, v, P):
        """Drop candidates that would break the position constraint with ``v``."""
        if self.constraint == PositionClass.ANY or not P:
            return P
        pv = self.pts[v]
        for u in _bits(P):
            pu = self.pts[u]
            bad = any(self._collinear(w, pv, pu) for w in placed)
            if not bad and self.constraint == PositionClass.GENERAL:
                bad = any(
                    self._concyclic(placed[i], placed[j], pv, pu)
                    for i in range(len(placed))
                    for j in range(i + 1, len(placed))
                )
            if bad:
                P &= ~(1 << u)
        return P

    def run(self, first_only):
        found = []
        m = len(self.pts)
        if m == 0 or self.target < 1:
            return found

        def rec(chosen, placed, P, off):
            if len(chosen) == self.target:
                if not off:
                    return False
                found.append([self.cands[i] for i in chosen])
                return first_only
            need = self.target - len(chosen)
            if bin(P).count("1") < need:
                return False
            # a set on one line is not an integral point set
            if not off and not P & self.off_mask:
                return False
            if need > 1 and _color_bound(P, self.adj) < need:
                return False
            rest = P
            for v in _bits(P):
                rest &= ~(1 << v)
                if bin(rest).count("1") + 1 < need:
                    break
                if not off and not (rest | 1 << v) & self.off_mask:
                    break
                nxt = self._filter(placed, v, rest & self.adj[v])
                v_off = off or not self.cands[v].on_line
                if rec(chosen + [v], placed + [self.pts[v]], nxt, v_off):
                    return True
            return False

        rec([], list(self.base), (1 << m) - 1, False)
        return found


def _class_tasks(pool: CandidatePool, constraint):
    line = pool.on_line if constraint == PositionClass.ANY else []
    for k in sorted(pool.by_characteristic):
        yield k, line + pool.by_characteristic[k]


def _to_set(d, k, cands):
    O, A = base_pair(d)
    return PointSet(k, (O, A) + tuple(c.point for c in cands))


def _run_class(args):
    d, k, cands, target, constraint, first_only = args
    search = _ClassSearch(d, k, cands, target, constraint)
    return [canonicalize(_to_set(d, k, cl)) for cl in search.run(first_only)]


def default_workers() -> int:
    env = os.environ.get("IPSET_THREADS")
    if env:
        value = int(env)
        if value < 1:
            raise ValueError(f"IPSET_THREADS must be positive, got {env!r}")
        return value
    return os.cpu_count() or 1


def find_sets(
    n: int,
    d: int,
    constraint: PositionClass = PositionClass.ANY,
    all: bool = True,
    workers: int = 1,
    pool: Optional[CandidatePool] = None,
) -> list[PointSet]:
    """Canonical ``n``-point integral sets of diameter exactly ``d``.

    With ``all=False`` the classes are scanned in order of characteristic and
    the first set found is returned, independent of ``workers``.
    """
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    constraint = PositionClass(constraint)
    if pool is None:
        pool = candidate_points(d)
    tasks = [(d, k, cands, n - 2, constraint, not all) for k, cands in _class_tasks(pool, constraint)]
    if not all:
        for task in tasks:
            res = _run_class(task)
            if res:
                return res[:1]
        return []
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_run_class, tasks))
    else:
        chunks = [_run_class(t) for t in tasks]
    unique = {S for chunk in chunks for S in chunk}
    return sorted(unique, key=PointSet.key)


def find_all_sets(d: int, constraint: PositionClass = PositionClass.ANY, workers: int = 1) -> dict[int, list[PointSet]]:
    """Every set of diameter exactly ``d``, keyed by cardinality."""
    pool = candidate_points(d)
    out = {}
    n = 3
    while True:
        sets = find_sets(n, d, constraint, all=True, workers=workers, pool=pool)
        if not sets:
            return out
        out[n] = sets
        n += 1


@dataclass
class SearchResult:
    n: int
    constraint: PositionClass
    d: int
    witnesses: list[PointSet] = field(default_factory=list)
    exhausted_up_to: int = 0


def minimal_diameter(
    n: int,
    constraint: PositionClass = PositionClass.ANY,
    d_max: int = 100,
    workers: int = 1,
    all_witnesses: bool = True,
) -> SearchResult:
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    if d_max < 1:
        raise ValueError(f"d_max must be positive, got {d_max}")
    for d in range(1, d_max + 1):
        sets = find_sets(n, d, constraint, all=all_witnesses, workers=workers)
        if sets:
            return SearchResult(n, PositionClass(constraint), d, sets, d - 1)
    raise BudgetExceeded(
        f"no {n}-point set ({PositionClass(constraint).label}) with diameter <= {d_max}",
        exhausted_up_to=d_max,
    )
