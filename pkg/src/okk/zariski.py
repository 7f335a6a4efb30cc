"""Zariski decomposition of effective torus-invariant divisors on toric surfaces.

The positive part is obtained by pushing every facet inequality of Delta(D)
until it touches the polygon; the difference is the negative part. The
defining properties are re-verified on every call.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyPolytope, NotEffective, VerificationFailure
from .geometry import EMPTY, Polygon, as_vec, intersect, translate, Q
from .toric import (ToricDivisor, continuant_determinant_check, det_matrix, divisor_polytope,
                    facet_length, intersection_numbers, is_nef)


@dataclass(frozen=True)
class ZariskiResult:
    positive: ToricDivisor
    negative: ToricDivisor
    support_of_N: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]


def tighten_offsets(d: ToricDivisor) -> tuple[Fraction, ...]:
    p = divisor_polytope(d)
    if p.is_empty:
        raise EmptyPolytope("Delta(D) is empty")
    return tuple(-min(u.dot(v) for v in p.vertices) for u in d.fan.rays)


def cyclic_blocks(support, s: int) -> list[tuple[int, ...]]:
    """Maximal runs of cyclically consecutive indices."""
    sup = sorted(set(support))
    if not sup:
        return []
    if len(sup) == s:
        return [tuple(range(s))]
    start = next(i for i in sup if (i - 1) % s not in sup)
    blocks, cur = [], []
    for k in range(s):
        i = (start + k) % s
        if i in sup:
            cur.append(i)
        elif cur:
            blocks.append(tuple(cur))
            cur = []
    if cur:
        blocks.append(tuple(cur))
    return blocks


def zariski_decompose(d: ToricDivisor) -> ZariskiResult:
    if any(a < 0 for a in d.coeffs):
        raise NotEffective("only effective representatives are accepted")
    tight = tighten_offsets(d)
    P = ToricDivisor(d.fan, tight)
    N = d - P
    support = tuple(i for i, c in enumerate(N.coeffs) if c != 0)
    blocks = tuple(cyclic_blocks(support, len(d.fan)))
    result = ZariskiResult(P, N, support, blocks)
    verify_zariski(d, result)
    return result


def verify_zariski(d: ToricDivisor, z: ZariskiResult) -> None:
    def fail(msg):
        raise VerificationFailure(f"Zariski decomposition of {list(map(str, d.coeffs))}: {msg}")

    P, N = z.positive, z.negative
    if tuple(a + b for a, b in zip(P.coeffs, N.coeffs)) != d.coeffs:
        fail("P + N != D")
    if any(c < 0 for c in N.coeffs):
        fail("negative part is not effective")
    if not is_nef(P):
        fail("positive part is not nef")
    form = intersection_numbers(d.fan)
    pP = divisor_polytope(P)
    for i in z.support_of_N:
        if form.lambdas[i] <= 0:
            fail(f"D_{i} in the negative part has D^2 >= 0")
        e = [0] * len(d.fan)
        e[i] = 1
        if form.dot(P.coeffs, e) != 0 or facet_length(P, i, pP) != 0:
            fail(f"P.D_{i} != 0")
    s = len(d.fan)
    for block in z.blocks:
        if len(block) > s - 2:
            fail("negative support covers too many rays")
        M = [[-form.pair(i, j) for j in block] for i in block]
        for k in range(1, len(block) + 1):
            if det_matrix([row[:k] for row in M[:k]]) <= 0:
                fail(f"block {block} is not negative definite")
        lhs, rhs = continuant_determinant_check(d.fan, block[0], len(block))
        if lhs != rhs or lhs != det_matrix(M):
            fail(f"continuant identity fails on block {block}")


def positive_part_polytope(d: ToricDivisor, v, t) -> Polygon:
    """Delta(D) cap (Delta(D) + t v), the polytope of the positive part of D - tC'."""
    p = divisor_polytope(d)
    if p.is_empty:
        return EMPTY
    return intersect(p, translate(p, as_vec(v) * Q(t)))
