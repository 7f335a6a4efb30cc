from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gen import lattice_polygon, primitive_direction, rational_polygon, rngs
from okk.errors import NotPrimitive, Unbounded
from okk.geometry import (EMPTY, AffineFn2D, HalfPlane, Polygon, Segment, affine, annihilator, area,
                          chord, clip, halfplane, integrate_affine, intersect, intersect_halfplanes,
                          lattice_length, minkowski_sum, mixed_volume_segment,
                          mixed_volume_segment_by_area, polygon, primitive, segment_polygon,
                          translate, vec, width)

SQUARE = polygon((0, 0), (1, 0), (1, 1), (0, 1))
P_EX = polygon((0, 0), (1, 0), (1, 1), (0, 2))


def test_halfplane_intersection_quadrilateral():
    hs = [halfplane((1, 0), 0), halfplane((0, 1), 0), halfplane((-1, 0), 1), halfplane((-1, -1), 2)]
    assert intersect_halfplanes(hs).vertices == tuple(vec(*p) for p in [(0, 0), (1, 0), (1, 1), (0, 2)])


def test_halfplane_intersection_point_and_empty():
    hs = [halfplane((1, 0), 0), halfplane((0, 1), 0), halfplane((-1, 0), 0), halfplane((0, -1), 0)]
    p = intersect_halfplanes(hs)
    assert p.vertices == (vec(0, 0),) and p.dim == 0
    assert intersect_halfplanes([halfplane((1, 0), -1), halfplane((-1, 0), 0),
                                 halfplane((0, 1), 0), halfplane((0, -1), 0)]).is_empty


def test_unbounded():
    with pytest.raises(Unbounded):
        intersect_halfplanes([halfplane((1, 0), 0), halfplane((0, 1), 0)])


def test_halfplane_normal_must_be_primitive():
    with pytest.raises(NotPrimitive):
        HalfPlane(vec(2, 0), F(0))


def test_area_width_examples():
    assert area(SQUARE) == 1
    assert area(P_EX) == F(3, 2)
    assert area(polygon((3, 4))) == 0
    assert width(SQUARE, (1, 0)) == 1
    assert width(P_EX, (0, 1)) == 2
    assert width(polygon((3, 4)), (2, 7)) == 0


def test_lattice_length_examples():
    assert lattice_length(Segment(vec(0, 0), vec(2, 4))) == 2
    assert lattice_length(Segment(vec(0, 0), vec(F(1, 2), 0))) == F(1, 2)
    assert lattice_length(Segment(vec(0, 0), vec(0, 0))) == 0


def test_minkowski_examples():
    assert minkowski_sum(SQUARE, polygon((1, 1))) == translate(SQUARE, (1, 1))
    assert minkowski_sum(SQUARE, segment_polygon((0, 0), (1, 0))) == polygon((0, 0), (2, 0), (2, 1), (0, 1))
    assert minkowski_sum(segment_polygon((0, 0), (1, 0)), segment_polygon((0, 0), (0, 1))) == SQUARE


def test_mixed_volume_examples():
    assert mixed_volume_segment(SQUARE, (0, 1)) == 1
    v = vec(0, 1)
    assert mixed_volume_segment(intersect(P_EX, translate(P_EX, v)), v) == 1
    assert mixed_volume_segment(intersect(P_EX, translate(P_EX, v * F(3, 2))), v) == F(1, 2)


def test_integrate_examples():
    xy = affine(1, 1, 0)
    assert integrate_affine(polygon((0, 0), (1, 0), (0, 1)), xy) == F(1, 3)
    assert integrate_affine(polygon((0, 0), (0, 1), (1, 1), (2, 0)), xy) == F(11, 6)
    assert integrate_affine(P_EX, affine(0, 0, 0)) == 0


def test_translate_intersect_examples():
    assert intersect(P_EX, translate(P_EX, (0, 2))) == polygon((0, 2))
    assert intersect(P_EX, P_EX) == P_EX
    assert intersect(P_EX, translate(P_EX, (0, 100))).is_empty
    assert intersect(EMPTY, P_EX).is_empty


def test_canonical_form():
    p = polygon((1, 1), (0, 0), (1, 0), (0, 2), (F(1, 2), 0))
    assert p.vertices[0] == vec(0, 0)
    assert p.vertices == (vec(0, 0), vec(1, 0), vec(1, 1), vec(0, 2))
    for h in p.halfplanes:
        assert any(h.value(v) == 0 for v in p.vertices)


def test_chord():
    assert chord(SQUARE, (0, F(1, 2)), (1, 0)) == (0, 1)
    assert chord(SQUARE, (1, 1), (1, 1)) == (-1, 0)


def test_annihilator():
    for v in [(1, 0), (0, 1), (2, 3), (-1, 4)]:
        xi = annihilator(v)
        assert xi.dot(v) == 0 and primitive(xi) == xi


@given(rngs())
def test_canonicalization_idempotent(rng):
    p = rational_polygon(rng)
    assert intersect_halfplanes(list(p.halfplanes)) == p
    assert Polygon.hull(p.vertices) == p


@given(rngs())
def test_hull_contains_points_and_is_strictly_convex(rng):
    pts = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(9)]
    p = Polygon.hull(pts)
    assert all(p.contains(q) for q in pts)
    vs = p.vertices
    if len(vs) >= 3:
        n = len(vs)
        assert all((vs[(i + 1) % n] - vs[i]).cross(vs[(i + 2) % n] - vs[(i + 1) % n]) > 0 for i in range(n))


@given(rngs())
def test_area_matches_sympy(rng):
    p = rational_polygon(rng)
    sp = sympy.Polygon(*[sympy.Point(sympy.Rational(v.x), sympy.Rational(v.y)) for v in p.vertices])
    a = sympy.Rational(abs(sp.area))
    assert area(p) == F(int(a.p), int(a.q))


@given(rngs())
def test_integral_matches_centroid_oracle(rng):
    p = rational_polygon(rng)
    f = AffineFn2D(vec(rng.randint(-3, 3), rng.randint(-3, 3)), F(rng.randint(-5, 5)))
    sp = sympy.Polygon(*[sympy.Point(sympy.Rational(v.x), sympy.Rational(v.y)) for v in p.vertices])
    c = sp.centroid
    expect = abs(sp.area) * (f.gradient.x * sympy.Rational(c.x) + f.gradient.y * sympy.Rational(c.y) + f.constant)
    expect = sympy.Rational(expect)
    assert integrate_affine(p, f) == F(int(expect.p), int(expect.q))


@settings(max_examples=50)
@given(rngs())
def test_integral_riemann_oracle(rng):
    p = lattice_polygon(rng, box=3)
    f = AffineFn2D(vec(rng.randint(-3, 3), rng.randint(-3, 3)), F(rng.randint(-5, 5)))
    n = 30
    xs = [float(v.x) for v in p.vertices]
    ys = [float(v.y) for v in p.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    hx, hy = (x1 - x0) / n, (y1 - y0) / n
    total = 0.0
    for i in range(n):
        for j in range(n):
            m = vec(F(x0 + (i + 0.5) * hx), F(y0 + (j + 0.5) * hy))
            if p.contains(m):
                total += float(f(m)) * hx * hy
    # boundary cells: perimeter/h cells of area h^2, each off by at most sup|f|
    sup = max(abs(float(f(v))) for v in p.vertices) + 1
    per = sum(((a.x - b.x) ** 2 + (a.y - b.y) ** 2) ** 0.5 for a, b in p.edges()) if p.dim == 2 else 0
    bound = 2 * sup * (float(per) + 4 * max(hx, hy)) * max(hx, hy) + 1e-9
    assert abs(total - float(integrate_affine(p, f))) <= bound


@given(rngs())
def test_integral_additive_under_subdivision(rng):
    p = rational_polygon(rng)
    f = AffineFn2D(vec(rng.randint(-3, 3), rng.randint(-3, 3)), F(rng.randint(-5, 5)))
    n = primitive_direction(rng, 3)
    c = F(rng.randint(-3, 3))
    a = clip(p, [HalfPlane(n, -c)])
    b = clip(p, [HalfPlane(-n, c)])
    assert integrate_affine(a, f) + integrate_affine(b, f) == integrate_affine(p, f)


@given(rngs())
def test_mixed_volume_two_routes(rng):
    p = rational_polygon(rng)
    v = primitive_direction(rng)
    assert mixed_volume_segment(p, v) == mixed_volume_segment_by_area(p, v)


@given(rngs())
def test_lattice_length_additive(rng):
    d = primitive_direction(rng)
    a = vec(rng.randint(-5, 5), rng.randint(-5, 5))
    s, t = F(rng.randint(0, 12), rng.randint(1, 4)), F(rng.randint(0, 12), rng.randint(1, 4))
    b, c = a + d * s, a + d * (s + t)
    assert lattice_length(Segment(a, b)) + lattice_length(Segment(b, c)) == lattice_length(Segment(a, c))


@given(rngs())
def test_width_brute_force(rng):
    p = rational_polygon(rng)
    xi = primitive_direction(rng)
    vals = [xi.dot(v) for v in p.vertices]
    assert width(p, xi) == max(vals) - min(vals)


@given(rngs())
def test_intersection_is_exact(rng):
    p, q = rational_polygon(rng), rational_polygon(rng)
    r = intersect(p, q)
    for v in r.vertices:
        assert p.contains(v) and q.contains(v)
    # any vertex of p inside q survives
    for v in p.vertices:
        if q.contains(v):
            assert r.contains(v)
