"""Smooth complete toric surfaces: fans, torus-invariant divisors, positivity."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import EmptyPolytope, NotCCW, NotPrimitive, NotUnimodular
from .geometry import (HalfPlane, Polygon, Vec2, as_vec, det, intersect_halfplanes,
                       is_primitive, lattice_length, Segment, Q)

log = logging.getLogger(__name__)


def _half(v: Vec2) -> int:
    return 0 if (v.y > 0 or (v.y == 0 and v.x > 0)) else 1


@dataclass(frozen=True)
class Fan2D:
    """Complete unimodular fan; rays in counterclockwise order."""

    rays: tuple[Vec2, ...]

    def __len__(self):
        return len(self.rays)

    def ray(self, i: int) -> Vec2:
        return self.rays[i % len(self.rays)]

    def cone(self, i: int) -> tuple[int, int]:
        """Rays of the i-th maximal cone, cone(u_i, u_{i+1})."""
        s = len(self.rays)
        return (i % s, (i + 1) % s)


def validate_fan(rays: Sequence) -> Fan2D:
    rs = tuple(as_vec(r) for r in rays)
    if len(rs) < 3:
        raise NotCCW("a complete fan needs at least three rays")
    for r in rs:
        if not is_primitive(r):
            raise NotPrimitive(f"ray {r} is not primitive")
    s = len(rs)
    for i in range(s):
        if det(rs[i], rs[(i + 1) % s]) <= 0:
            raise NotCCW(f"rays {i} and {(i + 1) % s} are not in strict counterclockwise order")
    # each step turns by less than pi, so the winding number is the number
    # of crossings of the positive x-axis
    winding = sum(1 for i in range(s) if _half(rs[i]) == 1 and _half(rs[(i + 1) % s]) == 0)
    if winding != 1:
        raise NotCCW("rays wind around the origin more than once")
    for i in range(s):
        if det(rs[i], rs[(i + 1) % s]) != 1:
            raise NotUnimodular(f"det(u_{i}, u_{(i + 1) % s}) = {det(rs[i], rs[(i + 1) % s])}")
    return Fan2D(rs)


def projective_plane() -> Fan2D:
    return validate_fan([(1, 0), (0, 1), (-1, -1)])


def hirzebruch(a: int) -> Fan2D:
    """F_a with rays (1,0), (0,1), (-1,a), (0,-1)."""
    return validate_fan([(1, 0), (0, 1), (-1, a), (0, -1)])


def blow_up(f: Fan2D, i: int) -> Fan2D:
    """Star subdivision of cone(u_i, u_{i+1}); the new ray sits at index i+1."""
    s = len(f)
    rays = list(f.rays)
    new = f.ray(i) + f.ray(i + 1)
    rays.insert((i % s) + 1, new)
    return Fan2D(tuple(rays))


@dataclass(frozen=True)
class ToricDivisor:
    fan: Fan2D
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.fan):
            raise ValueError("one coefficient per ray is required")

    def __add__(self, o: "ToricDivisor") -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    def __sub__(self, o: "ToricDivisor") -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def scaled(self, c) -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(Q(c) * a for a in self.coeffs))

    def halfplanes(self) -> list[HalfPlane]:
        return [HalfPlane(u, a) for u, a in zip(self.fan.rays, self.coeffs)]

    @property
    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.coeffs) if a != 0]


def divisor(fan: Fan2D, coeffs: Sequence) -> ToricDivisor:
    return ToricDivisor(fan, tuple(Q(a) for a in coeffs))


def divisor_polytope(d: ToricDivisor) -> Polygon:
    return intersect_halfplanes(d.halfplanes())


def canonical_divisor(f: Fan2D) -> ToricDivisor:
    return ToricDivisor(f, tuple(Fraction(-1) for _ in f.rays))


def cartier_data(d: ToricDivisor, sigma: int) -> Vec2:
    i, j = d.fan.cone(sigma)
    u, w = d.fan.rays[i], d.fan.rays[j]
    a, b = -d.coeffs[i], -d.coeffs[j]
    # det(u, w) = 1
    return Vec2(a * w.y - b * u.y, b * u.x - a * w.x)


def facet(d: ToricDivisor, i: int, p: Optional[Polygon] = None) -> tuple[Vec2, ...]:
    """Vertices of Delta(D) on the line <m, u_i> = -a_i."""
    p = divisor_polytope(d) if p is None else p
    u, a = d.fan.rays[i], d.coeffs[i]
    return tuple(v for v in p.vertices if u.dot(v) == -a)


def facet_length(d: ToricDivisor, i: int, p: Optional[Polygon] = None) -> Fraction:
    vs = facet(d, i, p)
    if len(vs) < 2:
        return Fraction(0)
    return lattice_length(Segment(vs[0], vs[-1]))


def is_big(d: ToricDivisor) -> bool:
    return divisor_polytope(d).dim == 2


def is_tight(d: ToricDivisor, p: Optional[Polygon] = None) -> bool:
    p = divisor_polytope(d) if p is None else p
    return (not p.is_empty) and all(facet(d, i, p) for i in range(len(d.fan)))


def refines_normal_fan(d: ToricDivisor, p: Optional[Polygon] = None) -> bool:
    """Every Cartier datum m_sigma lies in Delta(D) (convex support function)."""
    p = divisor_polytope(d) if p is None else p
    return (not p.is_empty) and all(p.contains(cartier_data(d, s)) for s in range(len(d.fan)))


def is_nef(d: ToricDivisor) -> bool:
    p = divisor_polytope(d)
    tight, refines = is_tight(d, p), refines_normal_fan(d, p)
    if tight != refines:
        log.warning("nef checks disagree for %s: tight=%s refines=%s", d.coeffs, tight, refines)
    return tight and refines


def is_ample(d: ToricDivisor) -> bool:
    p = divisor_polytope(d)
    return p.dim == 2 and all(len(facet(d, i, p)) == 2 for i in range(len(d.fan)))


@dataclass(frozen=True)
class IntersectionForm:
    lambdas: tuple[int, ...]

    @property
    def self_int(self) -> tuple[int, ...]:
        return tuple(-l for l in self.lambdas)

    def pair(self, i: int, j: int) -> int:
        s = len(self.lambdas)
        i, j = i % s, j % s
        if i == j:
            return -self.lambdas[i]
        return 1 if (j - i) % s in (1, s - 1) else 0

    def dot(self, a: Sequence, b: Sequence) -> Fraction:
        s = len(self.lambdas)
        return sum((Fraction(a[i]) * b[j] * self.pair(i, j)
                    for i in range(s) for j in range(s) if a[i] and b[j]), Fraction(0))


def intersection_numbers(f: Fan2D) -> IntersectionForm:
    s = len(f)
    lams = []
    for i in range(s):
        prev, cur, nxt = f.ray(i - 1), f.ray(i), f.ray(i + 1)
        lam = det(prev, nxt)
        if prev + nxt != cur * lam:
            raise NotUnimodular(f"u_{i-1} + u_{i+1} is not a multiple of u_{i}")
        lams.append(int(lam))
    return IntersectionForm(tuple(lams))


def intersect_divisors(d: ToricDivisor, e: ToricDivisor) -> Fraction:
    return intersection_numbers(d.fan).dot(d.coeffs, e.coeffs)


def continuant_determinant_check(f: Fan2D, start: int, k: int) -> tuple[Fraction, Fraction]:
    """Both sides of det(-D_i.D_j) = det(u_0, u_{k+1}) for rays start..start+k-1.

    u_0 is the ray before the range and u_{k+1} the ray after it. The empty
    range gives (1, 1): the empty determinant and det of adjacent rays.
    """
    s = len(f)
    if not 0 <= k <= s - 2:
        raise ValueError("range length must be between 0 and s-2")
    form = intersection_numbers(f)
    prev, cur = Fraction(0), Fraction(1)  # det A_{-1}, det A_0
    for t in range(k):
        lam = form.lambdas[(start + t) % s]
        prev, cur = cur, lam * cur - prev
    return cur, det(f.ray(start - 1), f.ray(start + k))


def det_matrix(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    M = [[Fraction(x) for x in r] for r in rows]
    n = len(M)
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            out = -out
        out *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return out


@dataclass(frozen=True)
class CoreResult:
    r_star: Fraction
    core: Polygon

    @property
    def q(self) -> Optional[Fraction]:
        return None if self.r_star == 0 else 1 / self.r_star


def _solve3(A, b):
    d = det_matrix(A)
    if d == 0:
        return None
    out = []
    for c in range(3):
        M = [list(r) for r in A]
        for r in range(3):
            M[r][c] = b[r]
        out.append(det_matrix(M) / d)
    return out


def core(d: ToricDivisor) -> CoreResult:
    """Largest r with Delta(D + rK) nonempty, by enumerating vertex events."""
    if divisor_polytope(d).is_empty:
        raise EmptyPolytope("Delta(D) is empty")
    rows = [(u.x, u.y, Fraction(-1)) for u in d.fan.rays]
    rhs = [-a for a in d.coeffs]
    best = None
    for i, j, k in combinations(range(len(rows)), 3):
        sol = _solve3([rows[i], rows[j], rows[k]], [rhs[i], rhs[j], rhs[k]])
        if sol is None:
            continue
        x, y, r = sol
        if all(u.x * x + u.y * y - r >= -a for u, a in zip(d.fan.rays, d.coeffs)):
            best = r if best is None else max(best, r)
    if best is None or best < 0:
        best = Fraction(0)
    shrunk = ToricDivisor(d.fan, tuple(a - best for a in d.coeffs))
    return CoreResult(best, divisor_polytope(shrunk))
