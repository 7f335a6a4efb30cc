"""Zonotopally well-covered polygons and rationality certificates for the
Seshadri constant at a general point.

If every extended vertex Q of P (with respect to v) has a slab P(Q) that
contains a zonotope of total lattice length equal to the slab's width across
v, then every vertex T = (a', b') of the binomial-flag body is realised by a
section x^Q (x^{-v} - 1)^{a'} g_1 ... g_k of order a' + b' at the general
point. The function a' + b' is then the Newton-Okounkov function on the
body, and its integral, a rational number, decides rationality.

The zonotope search is exact (a small LP over Fractions) but only uses a
finite generator set, so a negative verdict means "not found".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence, Union

from . import lp
from .errors import NotAmple, PointNotOnBoundary, Refusal
from .geometry import (AffineFn2D, Polygon, Vec2, annihilator, as_vec, chord, integrate_affine,
                       intersect, primitive, require_primitive, translate, vec, width)
from .nofunction import (SectionWitness, binomial, flag_key, flag_valuation, lex_positive,
                         opposite_vertex, witness_problems)
from .okounkov import NOBody, Sweep, ToricFlag
from .toric import ToricDivisor, divisor_polytope, is_ample

DEFAULT_KMAX = 12


def length_at(p: Polygon, q, v) -> Fraction:
    q, v = as_vec(q), require_primitive(v)
    if not p.on_boundary(q):
        raise PointNotOnBoundary(f"{q} is not on the boundary")
    lo, hi = chord(p, q, v)
    return max(-lo, hi)


def extended_vertex_set(p: Polygon, v) -> list[Vec2]:
    v = require_primitive(v)
    pts = set()
    for t in p.vertices:
        lo, hi = chord(p, t, v)
        pts.add(t + v * lo)
        pts.add(t + v * hi)
    sw = Sweep(p, v)
    for t in sw.times:
        if t > sw.mu:
            continue
        for m in sw.section(t):
            if p.on_boundary(m):
                pts.add(m)
    return sorted(pts)


def slab(p: Polygon, q, v) -> tuple[Fraction, Polygon]:
    """Length at q and the slab P(Q) = P cap (P -/+ l v)."""
    q, v = as_vec(q), as_vec(v)
    lo, hi = chord(p, q, v)
    ell = max(-lo, hi)
    if ell == 0:
        return ell, p
    # q on the side where moving along +v enters p: shift back by -l v
    shift = v * (-ell) if hi >= -lo else v * ell
    return ell, intersect(p, translate(p, shift))


@dataclass(frozen=True)
class ZwcEntry:
    point: Vec2
    length: Fraction
    slab: Polygon
    required_width: Fraction
    best_length: Fraction
    generators: tuple[tuple[Vec2, Fraction], ...]
    translation: Optional[Vec2]

    @property
    def ok(self) -> bool:
        return self.best_length == self.required_width

    def zonotope(self) -> Polygon:
        from .geometry import minkowski_sum, segment_polygon
        z = Polygon.hull([self.translation or vec(0, 0)])
        for g, l in self.generators:
            z = minkowski_sum(z, segment_polygon((0, 0), g * l))
        return z


@dataclass(frozen=True)
class ZwcReport:
    direction: Vec2
    entries: tuple[ZwcEntry, ...]
    generators: tuple[Vec2, ...]

    @property
    def verdict(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> list[ZwcEntry]:
        return [e for e in self.entries if not e.ok]


def best_zonotope(region: Polygon, gens: Sequence[Vec2]):
    """Largest total lattice length of a translate of sum l_i [0, g_i] inside region."""
    if region.is_empty or not gens:
        return Fraction(0), [Fraction(0)] * len(gens), None
    c0 = region.vertices[0]
    A, b = [], []
    for h in region.halfplanes:
        row = [max(Fraction(0), -h.normal.dot(g)) for g in gens]
        # translation c = c0 + (cp - cm) with cp, cm >= 0 componentwise
        row += [-h.normal.x, -h.normal.y, h.normal.x, h.normal.y]
        A.append(row)
        b.append(h.value(c0))
    best, x = lp.maximize([1] * len(gens) + [0] * 4, A, b)
    ls = x[:len(gens)]
    c = c0 + Vec2(x[-4] - x[-2], x[-3] - x[-1])
    return best, ls, c


def _generators(p: Polygon, v: Vec2, extra: Sequence) -> list[Vec2]:
    out = []
    for g in list(p.edge_directions()) + [v] + [primitive(as_vec(e)) for e in extra]:
        if g.cross(v) == 0:
            # parallel to v: no width across v, and it would raise the order along the curve
            continue
        if g not in out and -g not in out:
            out.append(g)
    return out


def zwc_check(p: Polygon, v, extra_generators: Sequence = ()) -> ZwcReport:
    v = require_primitive(v)
    xi = annihilator(v)
    gens = _generators(p, v, extra_generators)
    entries = []
    for q in extended_vertex_set(p, v):
        ell, s = slab(p, q, v)
        need = width(s, xi)
        best, ls, c = best_zonotope(s, gens)
        used = tuple((g, l) for g, l in zip(gens, ls) if l > 0)
        entries.append(ZwcEntry(q, ell, s, need, best, used, c))
    return ZwcReport(v, tuple(entries), tuple(gens))


# -- certificate -------------------------------------------------------------------

@dataclass(frozen=True)
class SeshadriCertificate:
    integral: Fraction
    witnesses: tuple[SectionWitness, ...]
    flag: ToricFlag
    body: NOBody
    zwc: ZwcReport
    conclusion: str


def witness_row_problems(w: SectionWitness, p: Polygon, body: NOBody, flag: ToricFlag) -> list[str]:
    out = witness_problems(w, p, flag)
    if out:
        return out
    if w.binomial_image is None:
        return ["no claimed point in the binomial-flag body"]
    got = w.binomial_valuation(body.direction)
    if got != w.binomial_image:
        out.append(f"binomial-flag valuation is {got}, not {w.binomial_image}")
    if not body.body.contains(w.binomial_image):
        out.append("claimed point lies outside the binomial-flag body")
    if w.claimed_order != got.x + got.y:
        out.append(f"order {w.claimed_order} differs from a'+b' = {got.x + got.y}")
    return out


def validate_witness_row(w: SectionWitness, p: Polygon, body: NOBody, flag: ToricFlag) -> bool:
    return not witness_row_problems(w, p, body, flag)


def _polygon_flags(p: Polygon) -> list[ToricFlag]:
    hs = p.halfplanes
    k = len(hs)
    out = []
    for i in range(k):
        for j in ((i + 1) % k, (i - 1) % k):
            out.append(ToricFlag(i, j, hs[i].normal, hs[j].normal))
    return out


def _vertex_witness(p: Polygon, sw: Sweep, T: Vec2, flag: ToricFlag, gens: Sequence[Vec2],
                    k_max: Optional[int]) -> Optional[SectionWitness]:
    """x^c (x^{-v} - 1)^{a'} g_1 ... g_k with Newton polygon in p and sum of lengths b'.

    The shift c is first tried at psi^{-1}(T), which reproduces the toric
    point of the body vertex; otherwise it is left free.
    """
    v = sw.v
    a, b = T.x, T.y
    head = [binomial(-v, a)] if a > 0 else []
    region = intersect(p, translate(p, v * a)) if a > 0 else p
    if region.is_empty:
        return None
    dirs = []
    for g in gens:
        g = lex_positive(g, flag)
        if g not in dirs:
            dirs.append(g)
    q = sw.psi_inverse(T)
    for anchor in (q, None):
        best, ls, c = _capped(region, dirs, b, anchor)
        if best != b:
            continue
        if k_max is not None and lcm(c.x.denominator, c.y.denominator, *[l.denominator for l in ls]) > k_max:
            continue
        w = SectionWitness(c, tuple(head + [binomial(g, l) for g, l in zip(dirs, ls) if l > 0]), c, a + b, T)
        np_ = w.newton_polygon()
        target = flag_valuation(np_, flag)
        return SectionWitness(c, w.factors, target, a + b, T)
    return None


def _capped(region: Polygon, dirs: Sequence[Vec2], cap: Fraction, anchor: Optional[Vec2]):
    """Longest zonotope sum l_i [0, g_i] (total <= cap) inside region.

    With an anchor the zonotope starts there; without one the start is free.
    """
    free = anchor is None
    c0 = region.vertices[0] if free else anchor
    n = len(dirs)
    A, rhs = [], []
    for h in region.halfplanes:
        row = [max(Fraction(0), -h.normal.dot(g)) for g in dirs]
        if free:
            row += [-h.normal.x, -h.normal.y, h.normal.x, h.normal.y]
        A.append(row)
        rhs.append(h.value(c0))
    A.append([Fraction(1)] * n + [Fraction(0)] * (4 if free else 0))
    rhs.append(cap)
    if any(r < 0 for r in rhs):
        return Fraction(0), [Fraction(0)] * n, c0
    if not n:
        return Fraction(0), [], c0
    best, x = lp.maximize([1] * n + [0] * (4 if free else 0), A, rhs)
    c = c0 + Vec2(x[n] - x[n + 2], x[n + 1] - x[n + 3]) if free else c0
    return best, x[:n], c


def seshadri_certificate(d: Union[ToricDivisor, Polygon], v, extra_generators: Sequence = (),
                         k_max: Optional[int] = DEFAULT_KMAX) -> SeshadriCertificate:
    if isinstance(d, ToricDivisor):
        if not is_ample(d):
            raise NotAmple("the certificate is only issued for ample divisors")
        p = divisor_polytope(d)
    else:
        p = d
    v = require_primitive(v)
    report = zwc_check(p, v, extra_generators)
    if not report.verdict:
        bad = report.failures[0]
        raise Refusal("NotZwc", point=bad.point, detail=report)
    sw = Sweep(p, v)
    beta = sw.beta()
    body = NOBody(beta.subgraph(), "binomial", beta=beta, mu=sw.mu, direction=v)
    origin_pre = sw.psi_inverse(vec(0, 0))
    gens = report.generators
    last_problem = None
    flags = _polygon_flags(p)
    # flags opposite psi^{-1}(0, 0) first: there T = (0, 0) is the pure monomial at that vertex
    flags.sort(key=lambda f: opposite_vertex(p, f) != origin_pre)
    for flag in flags:
        ws = []
        for T in body.body.vertices:
            w = _vertex_witness(p, sw, T, flag, gens, k_max)
            if w is None:
                last_problem = ("witness construction failed", T)
                break
            problems = witness_row_problems(w, p, body, flag)
            if problems:
                last_problem = ("; ".join(problems), T)
                break
            ws.append(w)
        else:
            integral = integrate_affine(body.body, AffineFn2D(vec(1, 1), Fraction(0)))
            text = (f"phi'_R = a'+b' on every vertex of the binomial-flag body (v = {v}); "
                    f"its integral {integral} is rational, so the Seshadri constant at a "
                    f"general point is rational")
            return SeshadriCertificate(integral, tuple(ws), flag, body, report, text)
    reason, point = last_problem if last_problem else ("no torus-invariant flag available", None)
    raise Refusal(reason, point=point, detail=report)
