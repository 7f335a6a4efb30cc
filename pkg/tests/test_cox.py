from math import lcm

from hypothesis import given

from gen import ample_divisor, rngs, smooth_fan
from okk.cox import binomial_curve_divisor, homogenize_coefficients
from okk.geometry import vec
from okk.toric import divisor_polytope, projective_plane, validate_fan

F1 = validate_fan([(1, 0), (0, 1), (-1, 0), (-1, -1)])


def test_homogenize_examples():
    assert homogenize_coefficients([(0, 0), (1, -2)], F1).coeffs == (0, 2, 1, 0)
    assert homogenize_coefficients([(0, 0), (0, 1)], F1).coeffs == (0, 0, 0, 1)
    assert homogenize_coefficients([(0, 0)], F1).coeffs == (0, 0, 0, 0)


def test_binomial_curve_examples():
    assert binomial_curve_divisor((0, 1), F1).coeffs == (0, 0, 0, 1)
    assert binomial_curve_divisor((1, 0), F1).coeffs == (0, 0, 1, 1)
    assert binomial_curve_divisor((1, 1), projective_plane()).coeffs == (0, 0, 2)


@given(rngs())
def test_nonnegative_when_origin_in_support(rng):
    f = smooth_fan(rng)
    pts = [(0, 0)] + [(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(rng.randint(0, 4))]
    assert all(c >= 0 for c in homogenize_coefficients(pts, f).coeffs)


@given(rngs())
def test_translation_changes_by_principal_divisor(rng):
    f = smooth_fan(rng)
    pts = [(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(rng.randint(1, 5))]
    w = vec(rng.randint(-3, 3), rng.randint(-3, 3))
    a = homogenize_coefficients(pts, f).coeffs
    b = homogenize_coefficients([vec(*p) + w for p in pts], f).coeffs
    assert all(y - x == -w.dot(u) for x, y, u in zip(a, b, f.rays))


@given(rngs())
def test_vertices_of_nef_polytope_give_back_offsets(rng):
    d = ample_divisor(rng)
    k = lcm(*(c.denominator for v in divisor_polytope(d).vertices for c in v))
    d = d.scaled(k)
    p = divisor_polytope(d)
    assert homogenize_coefficients(p.vertices, d.fan).coeffs == d.coeffs
