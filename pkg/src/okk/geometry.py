"""Exact rational planar geometry.

Everything here works over ``fractions.Fraction``. Polygons are stored in
two synchronized forms: a counterclockwise vertex list starting at the
lexicographically smallest vertex, and one primitive integral half-plane per
edge. Empty polygons, points and segments are ordinary values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, NamedTuple, Sequence

from .errors import NotPrimitive, Unbounded

Rat = Fraction


def Q(x) -> Fraction:
    """Coerce ints, strings like "3/4" and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use exact rationals")
    return Fraction(x)


class Vec2(NamedTuple):
    x: Fraction
    y: Fraction

    def __add__(self, o):
        return Vec2(self.x + o[0], self.y + o[1])

    def __sub__(self, o):
        return Vec2(self.x - o[0], self.y - o[1])

    def __neg__(self):
        return Vec2(-self.x, -self.y)

    def __mul__(self, s):
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, o) -> Fraction:
        return self.x * o[0] + self.y * o[1]

    def cross(self, o) -> Fraction:
        return self.x * o[1] - self.y * o[0]

    def rot90(self) -> "Vec2":
        return Vec2(-self.y, self.x)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __repr__(self):
        return f"({_fmt(self.x)}, {_fmt(self.y)})"


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vec(x, y) -> Vec2:
    return Vec2(Q(x), Q(y))


def as_vec(p) -> Vec2:
    return p if isinstance(p, Vec2) and isinstance(p.x, Fraction) else vec(p[0], p[1])


def det(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def primitive(d) -> Vec2:
    """Primitive integral vector on the ray of a nonzero rational vector."""
    d = as_vec(d)
    if d.is_zero():
        raise ValueError("zero vector has no primitive direction")
    m = lcm(d.x.denominator, d.y.denominator)
    a, b = int(d.x * m), int(d.y * m)
    g = gcd(a, b)
    return vec(a // g, b // g)


def is_primitive(v) -> bool:
    v = as_vec(v)
    if v.x.denominator != 1 or v.y.denominator != 1 or v.is_zero():
        return False
    return gcd(int(v.x), int(v.y)) == 1


def require_primitive(v) -> Vec2:
    v = as_vec(v)
    if not is_primitive(v):
        raise NotPrimitive(f"{v} is not a primitive integral vector")
    return v


def annihilator(v) -> Vec2:
    """Primitive xi with xi(v) = 0, oriented as v rotated by +90 degrees."""
    return primitive(as_vec(v).rot90())


@dataclass(frozen=True)
class Segment:
    start: Vec2
    end: Vec2


def lattice_length(s: Segment) -> Fraction:
    d = as_vec(s.end) - as_vec(s.start)
    if d.is_zero():
        return Fraction(0)
    p = primitive(d)
    return d.x / p.x if p.x != 0 else d.y / p.y


@dataclass(frozen=True)
class HalfPlane:
    """The set {m : <m, normal> >= -offset}."""

    normal: Vec2
    offset: Fraction

    def __post_init__(self):
        if not is_primitive(self.normal):
            raise NotPrimitive(f"half-plane normal {self.normal} is not primitive")

    def value(self, m) -> Fraction:
        """Slack of m; nonnegative iff m lies in the half-plane."""
        return self.normal.dot(m) + self.offset

    def contains(self, m) -> bool:
        return self.value(m) >= 0


def halfplane(normal, offset) -> HalfPlane:
    return HalfPlane(as_vec(normal), Q(offset))


@dataclass(frozen=True)
class AffineFn2D:
    """m -> <gradient, m> + constant."""

    gradient: Vec2
    constant: Fraction

    def __call__(self, m) -> Fraction:
        return self.gradient.dot(m) + self.constant

    def __add__(self, o: "AffineFn2D") -> "AffineFn2D":
        return AffineFn2D(self.gradient + o.gradient, self.constant + o.constant)

    def scaled(self, s) -> "AffineFn2D":
        return AffineFn2D(self.gradient * s, self.constant * s)


def affine(gx, gy, c) -> AffineFn2D:
    return AffineFn2D(vec(gx, gy), Q(c))


def convex_hull(points: Iterable) -> tuple[Vec2, ...]:
    """Strict convex hull, CCW, starting at the lexicographic minimum."""
    pts = sorted(set(as_vec(p) for p in points))
    if len(pts) <= 1:
        return tuple(pts)

    def half(seq):
        out: list[Vec2] = []
        for p in seq:
            while len(out) >= 2 and det(out[-1] - out[-2], p - out[-2]) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return tuple(hull)


def _edge_halfplane(a: Vec2, b: Vec2) -> HalfPlane:
    n = primitive((b - a).rot90())
    return HalfPlane(n, -n.dot(a))


_AXES = (vec(1, 0), vec(0, 1), vec(-1, 0), vec(0, -1))


def _halfplanes_for(vs: tuple[Vec2, ...]) -> tuple[HalfPlane, ...]:
    if not vs:
        return ()
    if len(vs) == 1:
        return tuple(HalfPlane(n, -n.dot(vs[0])) for n in _AXES)
    if len(vs) == 2:
        a, b = vs
        d = primitive(b - a)
        n = d.rot90()
        return (HalfPlane(n, -n.dot(a)), HalfPlane(-n, n.dot(a)),
                HalfPlane(d, -d.dot(a)), HalfPlane(-d, d.dot(b)))
    k = len(vs)
    return tuple(_edge_halfplane(vs[i], vs[(i + 1) % k]) for i in range(k))


@dataclass(frozen=True)
class Polygon:
    """Canonical convex polygon; build with ``Polygon.hull`` or ``intersect_halfplanes``."""

    vertices: tuple[Vec2, ...]
    halfplanes: tuple[HalfPlane, ...]

    @staticmethod
    def hull(points: Iterable) -> "Polygon":
        vs = convex_hull(points)
        return Polygon(vs, _halfplanes_for(vs))

    @staticmethod
    def empty() -> "Polygon":
        return EMPTY

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def dim(self) -> int:
        return min(len(self.vertices), 3) - 1

    def contains(self, m) -> bool:
        if self.is_empty:
            return False
        m = as_vec(m)
        return all(h.contains(m) for h in self.halfplanes)

    def on_boundary(self, m) -> bool:
        if not self.contains(m):
            return False
        if self.dim < 2:
            return True
        return any(h.value(m) == 0 for h in self.halfplanes)

    def contains_polygon(self, other: "Polygon") -> bool:
        return all(self.contains(v) for v in other.vertices)

    def edges(self) -> list[tuple[Vec2, Vec2]]:
        vs = self.vertices
        if len(vs) < 2:
            return []
        if len(vs) == 2:
            return [(vs[0], vs[1])]
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edge_directions(self) -> list[Vec2]:
        """Primitive edge directions, one per edge (up to sign, deduplicated)."""
        out: list[Vec2] = []
        for a, b in self.edges():
            d = primitive(b - a)
            if d not in out and -d not in out:
                out.append(d)
        return out

    def __repr__(self):
        return "Polygon[" + ", ".join(map(repr, self.vertices)) + "]"


EMPTY = Polygon((), ())


def polygon(*points) -> Polygon:
    return Polygon.hull(points)


def _meet(h1: HalfPlane, h2: HalfPlane):
    d = det(h1.normal, h2.normal)
    if d == 0:
        return None
    # <n1, m> = -o1, <n2, m> = -o2
    r1, r2 = -h1.offset, -h2.offset
    x = (r1 * h2.normal.y - r2 * h1.normal.y) / d
    y = (h1.normal.x * r2 - h2.normal.x * r1) / d
    return Vec2(x, y)


def intersect_halfplanes(hs: Sequence[HalfPlane]) -> Polygon:
    """Exact intersection; EMPTY if infeasible, ``Unbounded`` if not compact."""
    hs = list(hs)
    if not hs:
        raise ValueError("need at least one half-plane")
    cands = set()
    for h1, h2 in combinations(hs, 2):
        m = _meet(h1, h2)
        if m is not None and all(h.contains(m) for h in hs):
            cands.add(m)
    if not cands:
        n0 = hs[0].normal
        if all(det(n0, h.normal) == 0 for h in hs):
            # all boundary lines parallel: feasible iff the 1D interval is nonempty
            lo, hi = None, None
            for h in hs:
                s = h.normal.dot(n0) // abs(h.normal.dot(n0))
                b = -h.offset * s  # <m, n0> >= b  (s = 1) or <= -b (s = -1)
                if s > 0:
                    lo = b if lo is None else max(lo, b)
                else:
                    hi = b if hi is None else min(hi, b)
            if lo is not None and hi is not None and lo > hi:
                return EMPTY
            raise Unbounded("half-plane intersection contains a line")
        return EMPTY
    for h in hs:
        for d in (h.normal.rot90(), -h.normal.rot90()):
            if all(g.normal.dot(d) >= 0 for g in hs):
                raise Unbounded(f"half-plane intersection is unbounded along {d}")
    return Polygon.hull(cands)


def translate(p: Polygon, t) -> Polygon:
    t = as_vec(t)
    return Polygon.hull(v + t for v in p.vertices)


def clip(p: Polygon, hs: Iterable[HalfPlane]) -> Polygon:
    """Intersection of a polygon with half-planes, by edge clipping."""
    vs = list(p.vertices)
    for h in hs:
        if not vs:
            break
        vals = [h.value(v) for v in vs]
        if all(x >= 0 for x in vals):
            continue
        out = []
        n = len(vs)
        for k in range(n):
            a, b, fa, fb = vs[k], vs[(k + 1) % n], vals[k], vals[(k + 1) % n]
            if fa >= 0:
                out.append(a)
            if (fa > 0 > fb) or (fa < 0 < fb):
                out.append(a + (b - a) * (fa / (fa - fb)))
        vs = out
    return Polygon.hull(vs)


def intersect(p: Polygon, q: Polygon) -> Polygon:
    if p.is_empty or q.is_empty:
        return EMPTY
    return clip(p, q.halfplanes)


def area(p: Polygon) -> Fraction:
    vs = p.vertices
    if len(vs) < 3:
        return Fraction(0)
    s = sum(det(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
    return abs(s) / 2


def width(p: Polygon, xi) -> Fraction:
    if p.is_empty:
        return Fraction(0)
    vals = [as_vec(xi).dot(v) for v in p.vertices]
    return max(vals) - min(vals)


def minkowski_sum(p: Polygon, q: Polygon) -> Polygon:
    if p.is_empty or q.is_empty:
        return EMPTY
    return Polygon.hull(a + b for a in p.vertices for b in q.vertices)


def segment_polygon(a, b) -> Polygon:
    return Polygon.hull([as_vec(a), as_vec(b)])


def mixed_volume_segment(p: Polygon, v) -> Fraction:
    """MV(p, [0, v]): the width of p against the annihilator of v."""
    return width(p, annihilator(require_primitive(v)))


def mixed_volume_segment_by_area(p: Polygon, v) -> Fraction:
    """Same quantity via area(p + [0,v]) - area(p); used as a cross-check."""
    v = require_primitive(v)
    return area(minkowski_sum(p, segment_polygon((0, 0), v))) - area(p)


def integrate_affine(p: Polygon, f: AffineFn2D) -> Fraction:
    vs = p.vertices
    total = Fraction(0)
    for i in range(1, len(vs) - 1):
        a, b, c = vs[0], vs[i], vs[i + 1]
        tri = abs(det(b - a, c - a)) / 2
        total += tri * (f(a) + f(b) + f(c)) / 3
    return total


def apply_linear(p: Polygon, rows, shift=(0, 0)) -> Polygon:
    """Image of p under m -> (<rows[0], m>, <rows[1], m>) + shift."""
    r0, r1 = as_vec(rows[0]), as_vec(rows[1])
    s = as_vec(shift)
    return Polygon.hull(Vec2(r0.dot(v) + s.x, r1.dot(v) + s.y) for v in p.vertices)


def chord(p: Polygon, q, v) -> tuple[Fraction, Fraction]:
    """Interval [t_min, t_max] of t with q + t v in p (q must lie in p)."""
    q, v = as_vec(q), as_vec(v)
    lo, hi = None, None
    for h in p.halfplanes:
        a = h.normal.dot(v)
        b = h.value(q)
        if a > 0:
            t = -b / a
            lo = t if lo is None else max(lo, t)
        elif a < 0:
            t = -b / a
            hi = t if hi is None else min(hi, t)
    return (lo if lo is not None else Fraction(0), hi if hi is not None else Fraction(0))
