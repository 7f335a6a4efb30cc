from fractions import Fraction as F

import pytest
from hypothesis import given

from gen import ample_divisor, effective_divisor, primitive_direction, rngs, smooth_fan
from okk.errors import EmptyPolytope, NotEffective
from okk.geometry import mixed_volume_segment, polygon, vec
from okk.toric import (continuant_determinant_check, det_matrix, divisor, divisor_polytope,
                       facet_length, intersection_numbers, is_nef, validate_fan)
from okk.zariski import positive_part_polytope, tighten_offsets, zariski_decompose

F1 = validate_fan([(1, 0), (0, 1), (-1, 0), (-1, -1)])
D = divisor(F1, [0, 0, 1, 2])


def test_tighten_examples():
    assert tighten_offsets(divisor(F1, [0, 0, 1, 0])) == (0, 0, 0, 0)
    assert tighten_offsets(D) == D.coeffs
    assert tighten_offsets(divisor(F1, [0] * 4)) == (0, 0, 0, 0)
    with pytest.raises(EmptyPolytope):
        tighten_offsets(divisor(F1, [-1, 0, 0, 0]))


def test_decompose_examples():
    z = zariski_decompose(divisor(F1, [0, 0, 1, 0]))
    assert z.positive.coeffs == (0, 0, 0, 0) and z.negative.coeffs == (0, 0, 1, 0)
    z = zariski_decompose(D)
    assert z.positive.coeffs == D.coeffs and z.support_of_N == ()
    d = divisor(F1, [1, 0, 1, 0])
    z = zariski_decompose(d)
    slack = tighten_offsets(d)[2] != d.coeffs[2]
    assert (2 in z.support_of_N) == slack


def test_rejects_non_effective():
    with pytest.raises(NotEffective):
        zariski_decompose(divisor(F1, [-1, 0, 3, 3]))


def test_positive_part_polytope_examples():
    v = (0, 1)
    assert positive_part_polytope(D, v, F(1, 2)) == polygon((0, F(1, 2)), (1, F(1, 2)), (1, 1), (0, 2))
    assert positive_part_polytope(D, v, 0) == divisor_polytope(D)
    assert positive_part_polytope(D, v, 2) == polygon((0, 2))
    assert positive_part_polytope(D, v, 3).is_empty


def _check(d):
    z = zariski_decompose(d)
    P, N = z.positive, z.negative
    form = intersection_numbers(d.fan)
    assert all(a + b == c for a, b, c in zip(P.coeffs, N.coeffs, d.coeffs))
    assert is_nef(P)
    assert all(c >= 0 for c in N.coeffs)
    for i in z.support_of_N:
        e = [0] * len(d.fan)
        e[i] = 1
        assert form.dot(P.coeffs, e) == 0
        assert facet_length(P, i) == 0
        assert form.self_int[i] < 0
    for b in z.blocks:
        m = [[-form.pair(i, j) for j in b] for i in b]
        for k in range(1, len(b) + 1):
            assert det_matrix([r[:k] for r in m[:k]]) > 0
        lhs, rhs = continuant_determinant_check(d.fan, b[0], len(b))
        assert lhs == rhs
    return z


@given(rngs())
def test_zariski_properties(rng):
    f = smooth_fan(rng)
    _check(effective_divisor(rng, f))


@given(rngs())
def test_zariski_class_invariance(rng):
    f = smooth_fan(rng, 9)
    d = effective_divisor(rng, f)
    w = vec(rng.randint(-1, 1), rng.randint(-1, 1))
    c = max(abs(w.dot(u)) for u in f.rays)
    shifted = divisor(f, [a + c for a in d.coeffs])
    moved = divisor(f, [a + c - w.dot(u) for a, u in zip(d.coeffs, f.rays)])
    assert zariski_decompose(shifted).negative.coeffs == zariski_decompose(moved).negative.coeffs


@given(rngs())
def test_positive_part_monotone_and_beta_concave(rng):
    d = ample_divisor(rng)
    v = primitive_direction(rng, 3)
    ts = sorted({F(rng.randint(0, 24), 4) for _ in range(6)} | {F(0)})
    polys = [positive_part_polytope(d, v, t) for t in ts]
    for a, b in zip(polys, polys[1:]):
        assert b.is_empty or a.contains_polygon(b)
    vals = [mixed_volume_segment(p, v) if not p.is_empty else None for p in polys]
    pts = [(t, y) for t, y in zip(ts, vals) if y is not None]
    for (t0, y0), (t1, y1), (t2, y2) in zip(pts, pts[1:], pts[2:]):
        # concave: middle point on or above the chord
        assert (y1 - y0) * (t2 - t0) >= (y2 - y0) * (t1 - t0)
