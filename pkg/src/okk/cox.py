"""Torus-invariant representatives of curves given by a local equation.

Only the support of the Laurent polynomial matters: the divisor of the
closure of {f = 0} is linearly equivalent to sum_rho -min_{m in supp f} <m, u_rho> D_rho.
"""

from __future__ import annotations

from typing import Iterable

from .geometry import as_vec, require_primitive
from .toric import Fan2D, ToricDivisor


def homogenize_coefficients(support: Iterable, f: Fan2D) -> ToricDivisor:
    pts = [as_vec(m) for m in support]
    if not pts:
        raise ValueError("support must be non-empty")
    for m in pts:
        if m.x.denominator != 1 or m.y.denominator != 1:
            raise ValueError(f"support point {m} is not a lattice point")
    return ToricDivisor(f, tuple(-min(u.dot(m) for m in pts) for u in f.rays))


def binomial_curve_divisor(v, f: Fan2D) -> ToricDivisor:
    """Torus-invariant divisor linearly equivalent to the closure of {x^v = 1}."""
    v = require_primitive(v)
    return homogenize_coefficients([(0, 0), v], f)
