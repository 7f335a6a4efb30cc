"""Exact simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0.

Only this feasible-origin form is needed (zonotope packing problems), so a
single phase with Bland's rule suffices. All arithmetic is Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class LPUnbounded(Exception):
    pass


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, list[Fraction]]:
    n = len(c)
    m = len(A)
    if any(Fraction(bi) < 0 for bi in b):
        raise ValueError("origin must be feasible (b >= 0)")
    # tableau rows: [A | I | b]; objective row holds reduced costs
    T = [[Fraction(x) for x in row] + [Fraction(int(i == r)) for i in range(m)] + [Fraction(b[r])]
         for r, row in enumerate(A)]
    z = [-Fraction(x) for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + r for r in range(m)]
    width = n + m
    while True:
        col = next((j for j in range(width) if z[j] < 0), None)
        if col is None:
            break
        best = None
        for r in range(m):
            a = T[r][col]
            if a > 0:
                ratio = T[r][-1] / a
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            raise LPUnbounded("objective unbounded")
        r = best[1]
        piv = T[r][col]
        T[r] = [x / piv for x in T[r]]
        for rr in range(m):
            if rr != r and T[rr][col] != 0:
                f = T[rr][col]
                T[rr] = [x - f * y for x, y in zip(T[rr], T[r])]
        if z[col] != 0:
            f = z[col]
            z = [x - f * y for x, y in zip(z, T[r])]
        basis[r] = col
    x = [Fraction(0)] * n
    for r, j in enumerate(basis):
        if j < n:
            x[j] = T[r][-1]
    return z[-1], x
