"""Facher sets and circular sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstructionBudgetExceeded
from .exact import Point, PointSet, is_perfect_square


@dataclass(frozen=True)
class FacherSpec:
    h: int
    legs: tuple[int, ...]

    def __post_init__(self):
        for x in self.legs:
            if is_perfect_square(x * x + self.h * self.h) is None:
                raise ValueError(f"leg {x} is not at integer distance from apex height {self.h}")


def facher_legs(h: int) -> tuple[int, ...]:
    """Non-negative ``x`` with ``x**2 + h**2`` a square, from ``h**2 = e * f``."""
    if h < 1:
        raise ValueError(f"apex height must be positive, got {h}")
    h2 = h * h
    legs = set()
    for e in range(1, math.isqrt(h2) + 1):
        if h2 % e:
            continue
        f = h2 // e
        if (f - e) % 2 == 0:
            legs.add((f - e) // 2)
    return tuple(sorted(legs))


def facher_from_spec(spec: FacherSpec) -> PointSet:
    pts = [Point(0, spec.h)]
    for x in sorted(set(spec.legs)):
        if x == 0:
            pts.append(Point(0, 0))
        else:
            pts.extend((Point(-x, 0), Point(x, 0)))
    return PointSet(1, tuple(pts))


def facher(h: int) -> PointSet:
    """Apex ``(0, h)`` over every line point at integer distance from it."""
    return facher_from_spec(FacherSpec(h, facher_legs(h)))


@dataclass(frozen=True)
class CircularSpec:
    # half-angles as (cos, sin) pairs with rational entries
    angles: tuple[tuple[Fraction, Fraction], ...]
    scale: Fraction

    def __post_init__(self):
        for c, s in self.angles:
            if c * c + s * s != 1:
                raise ValueError(f"({c}, {s}) is not on the unit circle")


def pythagorean_angles(max_hypotenuse: int) -> list[tuple[Fraction, Fraction]]:
    """Half-angles in ``[0, pi)`` with rational cosine and sine.

    Ordered by hypotenuse so small chords come first.
    """
    out = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    triples = []
    for u in range(2, math.isqrt(max_hypotenuse) + 1):
        for v in range(1, u):
            if (u - v) % 2 == 0 or math.gcd(u, v) != 1:
                continue
            a, b, c = u * u - v * v, 2 * u * v, u * u + v * v
            if c <= max_hypotenuse:
                triples.append((c, min(a, b), max(a, b)))
    for c, a, b in sorted(triples):
        for cos, sin in ((a, b), (b, a), (-a, b), (-b, a)):
            out.append((Fraction(cos, c), Fraction(sin, c)))
    return out


def _chord_factor(p, q):
    # 2 |sin(phi_p - phi_q)|
    (c1, s1), (c2, s2) = p, q
    return 2 * abs(s1 * c2 - c1 * s2)


def _scale_for(angles) -> Fraction:
    """Least radius turning every chord factor into an integer."""
    num_gcd, den_lcm = 0, 1
    for i in range(len(angles)):
        for j in range(i + 1, len(angles)):
            f = _chord_factor(angles[i], angles[j])
            num_gcd = math.gcd(num_gcd, f.numerator)
            den_lcm = den_lcm * f.denominator // math.gcd(den_lcm, f.denominator)
    return Fraction(den_lcm, num_gcd)


def circular_from_spec(spec: CircularSpec) -> PointSet:
    R = spec.scale
    # point at full angle 2*phi on the circle of radius R
    pts = [Point(R * (c * c - s * s), R * 2 * s * c) for c, s in spec.angles]
    return PointSet(1, tuple(pts))


def circular_spec(n: int, max_hypotenuse: int = 2000) -> CircularSpec:
    """Greedily pick ``n`` half-angles keeping the common chord scale small."""
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    pool = pythagorean_angles(max_hypotenuse)
    chosen = [pool[0]]
    remaining = pool[1:]
    while len(chosen) < n:
        if not remaining:
            raise ConstructionBudgetExceeded(
                f"only {len(chosen)} angles available with hypotenuse <= {max_hypotenuse}"
            )
        best = min(range(len(remaining)), key=lambda i: (_scale_for(chosen + [remaining[i]]), i))
        chosen.append(remaining.pop(best))
    return CircularSpec(tuple(chosen), _scale_for(chosen))


def circular(n: int, max_hypotenuse: int = 2000) -> PointSet:
    return circular_from_spec(circular_spec(n, max_hypotenuse))
