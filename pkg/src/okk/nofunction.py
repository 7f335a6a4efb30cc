"""Newton-Okounkov functions: toric valuations, the a+b bound, section witnesses
and the integral-comparison certificate.

A section is described by its factors: a monomial shift x^m and a list of
Laurent polynomials given by their supports, each raised to a rational power.
Two-term factors are binomials x^p - x^q, which vanish to order one at the
general point (1, 1); any other factor must declare its order there.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Optional, Sequence

from . import lp
from .errors import InvalidWitness, NonSmoothVertex, VerificationFailure
from .geometry import (AffineFn2D, Polygon, Vec2, as_vec, det, integrate_affine, minkowski_sum,
                       primitive, vec, Q)
from .okounkov import ToricFlag, nobody_binomial
from .toric import ToricDivisor, cartier_data, divisor_polytope, is_ample

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PLFunctionOnPolygon:
    chambers: tuple[Polygon, ...]
    pieces: tuple[AffineFn2D, ...]

    def __call__(self, m) -> Fraction:
        m = as_vec(m)
        for c, f in zip(self.chambers, self.pieces):
            if c.contains(m):
                return f(m)
        raise ValueError(f"{m} lies outside the domain")

    @property
    def domain(self) -> Polygon:
        return Polygon.hull(v for c in self.chambers for v in c.vertices)

    def integral(self) -> Fraction:
        return sum((integrate_affine(c, f) for c, f in zip(self.chambers, self.pieces)), Fraction(0))

    def is_concave(self) -> bool:
        """Concave and continuous iff every piece dominates the function on every chamber."""
        for c, f in zip(self.chambers, self.pieces):
            for g in self.pieces:
                if any(g(v) < f(v) for v in c.vertices):
                    return False
        return True


def single_piece(p: Polygon, f: AffineFn2D) -> PLFunctionOnPolygon:
    return PLFunctionOnPolygon((p,), (f,))


# -- toric valuations -------------------------------------------------------

def toric_no_function(d: ToricDivisor, flag: Optional[ToricFlag], z: Sequence[int]) -> PLFunctionOnPolygon:
    """ord_Z on Delta(D) for a torus-invariant Z given by one ray or two adjacent rays.

    The flag only fixes body coordinates; the function is returned on Delta(D)
    in M-coordinates.
    """
    s = len(d.fan)
    z = tuple(i % s for i in z)
    if len(z) == 1:
        sigma = z[0]
    elif len(z) == 2 and (z[1] - z[0]) % s in (1, s - 1):
        sigma = z[0] if (z[1] - z[0]) % s == 1 else z[1]
    else:
        raise ValueError("z must be a ray or a pair of adjacent rays")
    u = Vec2(Fraction(0), Fraction(0))
    for i in z:
        u = u + d.fan.rays[i]
    m_sigma = cartier_data(d, sigma)
    return single_piece(divisor_polytope(d), AffineFn2D(u, -u.dot(m_sigma)))


def opposite_vertex(p: Polygon, flag: ToricFlag) -> Vec2:
    best = max(flag.u_i.dot(v) for v in p.vertices)
    face = [v for v in p.vertices if flag.u_i.dot(v) == best]
    best2 = max(flag.u_j.dot(v) for v in face)
    return min(v for v in face if flag.u_j.dot(v) == best2)


def flag_key(flag: ToricFlag, m) -> tuple[Fraction, Fraction]:
    return (flag.u_i.dot(m), flag.u_j.dot(m))


def flag_valuation(np_: Polygon, flag: ToricFlag) -> Vec2:
    """Valuation of a general section with Newton polygon np_: its lex-minimal point."""
    return min(np_.vertices, key=lambda v: (flag_key(flag, v), v))


def _vertex_frame(p: Polygon, q) -> tuple[Vec2, Vec2, Vec2, Vec2]:
    """Edge directions at q (towards previous and next vertex) and their lengths."""
    q = as_vec(q)
    vs = p.vertices
    if q not in vs or p.dim < 2:
        raise NonSmoothVertex(f"{q} is not a vertex of a full-dimensional polygon")
    k = vs.index(q)
    prev, nxt = vs[k - 1], vs[(k + 1) % len(vs)]
    e1, e2 = primitive(prev - q), primitive(nxt - q)
    if abs(det(e1, e2)) != 1:
        raise NonSmoothVertex(f"edges at {q} do not form a lattice basis")
    return e1, e2, prev, nxt


def _coordinates(e1: Vec2, e2: Vec2, q: Vec2):
    """Affine functions a, b with m = q + a e1 + b e2."""
    dd = det(e1, e2)
    fa = AffineFn2D(Vec2(e2.y / dd, -e2.x / dd), Fraction(0))
    fb = AffineFn2D(Vec2(-e1.y / dd, e1.x / dd), Fraction(0))
    return (AffineFn2D(fa.gradient, -fa.gradient.dot(q)), AffineFn2D(fb.gradient, -fb.gradient.dot(q)))


def ab_upper_bound(p: Polygon, q) -> PLFunctionOnPolygon:
    """(a, b) -> a + b in the coordinate system of the vertex q.

    a runs along the edge towards the previous vertex, b along the edge
    towards the next one (counterclockwise order).
    """
    e1, e2, _, _ = _vertex_frame(p, q)
    fa, fb = _coordinates(e1, e2, as_vec(q))
    return single_piece(p, fa + fb)


def par_region(p: Polygon, q) -> Polygon:
    """Points whose coordinate box at q fits into p; there phi_R = a + b."""
    from .geometry import Segment, lattice_length, clip, HalfPlane
    q = as_vec(q)
    e1, e2, prev, nxt = _vertex_frame(p, q)
    fa, fb = _coordinates(e1, e2, q)
    l1, l2 = lattice_length(Segment(q, prev)), lattice_length(Segment(q, nxt))
    cuts = []
    for f, length in ((fa, l1), (fb, l2)):
        n = primitive(-f.gradient)
        scale = n.x / -f.gradient.x if f.gradient.x != 0 else n.y / -f.gradient.y
        cuts.append(HalfPlane(n, (length - f.constant) * scale))
    return clip(p, cuts)


def is_anti_blocking(p: Polygon) -> bool:
    if p.is_empty or any(v.x < 0 or v.y < 0 for v in p.vertices):
        return False
    for v in p.vertices:
        for c in (vec(0, 0), Vec2(v.x, Fraction(0)), Vec2(Fraction(0), v.y)):
            if not p.contains(c):
                return False
    return True


# -- witnesses ----------------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    """A Laurent polynomial factor, by support, raised to ``multiplicity``.

    ``order`` is the vanishing order at (1, 1). Binomials (two support
    points) get order 1 automatically. For the binomial flag with direction v
    a binomial contributes to the order along the curve when its direction is
    parallel to v, otherwise to the order at the point on the curve; other
    factors may declare these as ``curve_order`` and ``point_order``.
    """

    support: tuple[Vec2, ...]
    multiplicity: Fraction = Fraction(1)
    order: Optional[Fraction] = None
    curve_order: Optional[Fraction] = None
    point_order: Optional[Fraction] = None

    @property
    def is_binomial(self) -> bool:
        return len(set(self.support)) == 2

    @property
    def order_at_point(self) -> Fraction:
        if self.order is not None:
            return self.order
        if self.is_binomial:
            return Fraction(1)
        raise ValueError("non-binomial factor without declared order")

    def newton_polygon(self) -> Polygon:
        return Polygon.hull(as_vec(m) * self.multiplicity for m in self.support)

    def degree_bound(self) -> Fraction:
        """Order of vanishing at any point is at most the degree after clearing monomials."""
        pts = [as_vec(m) for m in self.support]
        cx, cy = min(m.x for m in pts), min(m.y for m in pts)
        return max(m.x - cx + m.y - cy for m in pts)

    def binomial_flag_orders(self, v) -> tuple[Fraction, Fraction]:
        if self.is_binomial:
            a, b = sorted(set(self.support))
            if det(as_vec(b) - as_vec(a), as_vec(v)) == 0:
                return (Fraction(1), Fraction(0))
            return (Fraction(0), Fraction(1))
        if self.curve_order is None or self.point_order is None:
            raise ValueError("non-binomial factor without declared binomial-flag orders")
        return (self.curve_order, self.point_order)


def binomial(w, multiplicity=1) -> Factor:
    """x^w - 1."""
    return Factor((vec(0, 0), as_vec(w)), Q(multiplicity))


def factor(support, multiplicity=1, order=None, curve_order=None, point_order=None) -> Factor:
    opt = (lambda x: None if x is None else Q(x))
    return Factor(tuple(as_vec(m) for m in support), Q(multiplicity), opt(order),
                  opt(curve_order), opt(point_order))


@dataclass(frozen=True)
class SectionWitness:
    monomial_shift: Vec2
    factors: tuple[Factor, ...]
    target_point: Vec2
    claimed_order: Fraction
    binomial_image: Optional[Vec2] = None

    def newton_polygon(self) -> Polygon:
        np_ = Polygon.hull([self.monomial_shift])
        for f in self.factors:
            np_ = minkowski_sum(np_, f.newton_polygon())
        return np_

    def order(self) -> Fraction:
        return sum((f.multiplicity * f.order_at_point for f in self.factors), Fraction(0))

    def binomial_valuation(self, v) -> Vec2:
        a, b = Fraction(0), Fraction(0)
        for f in self.factors:
            c, r = f.binomial_flag_orders(v)
            a += f.multiplicity * c
            b += f.multiplicity * r
        return Vec2(a, b)


def witness(shift, factors, target, order, binomial_image=None) -> SectionWitness:
    return SectionWitness(as_vec(shift), tuple(factors), as_vec(target), Q(order),
                          None if binomial_image is None else as_vec(binomial_image))


def witness_problems(w: SectionWitness, p: Polygon, flag: ToricFlag) -> list[str]:
    """Reasons why w fails to certify its claim; empty when valid."""
    out = []
    for f in w.factors:
        if not f.is_binomial:
            if f.order is None:
                out.append("non-binomial factor without declared order")
                continue
            if f.order > f.degree_bound():
                out.append(f"declared order {f.order} exceeds degree bound {f.degree_bound()}")
            else:
                log.info("trusting declared order %s of factor with support %s", f.order, f.support)
    if out:
        return out
    np_ = w.newton_polygon()
    if not p.contains_polygon(np_):
        out.append("Newton polygon not contained in the polytope")
    val = flag_valuation(np_, flag)
    if val != w.target_point:
        out.append(f"toric valuation is {val}, not {w.target_point}")
    if w.order() != w.claimed_order:
        out.append(f"factor orders sum to {w.order()}, not {w.claimed_order}")
    return out


# -- concave envelope -------------------------------------------------------------

def concave_envelope(p: Polygon, lifted: Sequence[tuple[Vec2, Fraction]]) -> PLFunctionOnPolygon:
    """Smallest concave function on p that is >= h at each lifted (m, h) and >= 0.

    Upper hull of the lifted points together with the vertices of p at height 0.
    """
    height: dict[Vec2, Fraction] = {v: Fraction(0) for v in p.vertices}
    for m, h in lifted:
        m = as_vec(m)
        height[m] = max(height.get(m, Fraction(0)), Q(h))
    pts = sorted(height.items())
    planes: dict[tuple, list[Vec2]] = {}
    for (a, ha), (b, hb), (c, hc) in combinations(pts, 3):
        dd = det(b - a, c - a)
        if dd == 0:
            continue
        # plane h = gx x + gy y + k through the three lifted points
        gx = ((hb - ha) * (c.y - a.y) - (hc - ha) * (b.y - a.y)) / dd
        gy = ((hc - ha) * (b.x - a.x) - (hb - ha) * (c.x - a.x)) / dd
        k = ha - gx * a.x - gy * a.y
        key = (gx, gy, k)
        if key in planes:
            continue
        if all(gx * m.x + gy * m.y + k >= h for m, h in pts):
            planes[key] = [m for m, h in pts if gx * m.x + gy * m.y + k == h]
    chambers, pieces = [], []
    for (gx, gy, k), on in sorted(planes.items()):
        face = Polygon.hull(on)
        if face.dim == 2:
            chambers.append(face)
            pieces.append(AffineFn2D(Vec2(gx, gy), k))
    return PLFunctionOnPolygon(tuple(chambers), tuple(pieces))


# -- certificate ----------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    lower_integral: Fraction
    upper_integral: Fraction
    envelope: PLFunctionOnPolygon
    shortfalls: tuple[tuple[Vec2, Fraction], ...] = ()

    @property
    def certified(self) -> bool:
        return self.lower_integral == self.upper_integral

    @property
    def gap(self) -> Fraction:
        return self.upper_integral - self.lower_integral

    @property
    def status(self) -> str:
        return "Certified" if self.certified else f"Gap({self.gap})"


def strategy_certificate(d: ToricDivisor, v, witnesses: Sequence[SectionWitness],
                         flag: Optional[ToricFlag] = None) -> Certificate:
    """Compare the integral of the witness envelope with that of a'+b' on the binomial body.

    The envelope is a lower bound for phi_R on the toric body; a'+b' is an
    upper bound for phi'_R on the binomial body. Both integrate phi_R when
    equal, which certifies the value.
    """
    from .okounkov import ToricFlag as _TF
    if flag is None:
        flag = _TF.of(d.fan, 0, 1)
    p = divisor_polytope(d)
    body = nobody_binomial(d, v)
    q = opposite_vertex(p, flag)
    bound = ab_upper_bound(p, q)
    lifted = []
    for k, w in enumerate(witnesses):
        problems = witness_problems(w, p, flag)
        if problems:
            raise InvalidWitness(k, "; ".join(problems))
        if w.claimed_order > bound(w.target_point):
            raise InvalidWitness(k, f"order {w.claimed_order} exceeds the a+b bound {bound(w.target_point)}")
        lifted.append((w.target_point, w.claimed_order))
    env = concave_envelope(p, lifted)
    lower = env.integral()
    upper = integrate_affine(body.body, AffineFn2D(vec(1, 1), Fraction(0)))
    if lower > upper:
        raise VerificationFailure(f"lower integral {lower} exceeds upper integral {upper}")
    shortfalls = ()
    if lower != upper:
        shortfalls = tuple((m, bound(m) - env(m)) for m in p.vertices if bound(m) != env(m))
    return Certificate(lower, upper, env, shortfalls)


# -- zonotope search ------------------------------------------------------------------

def lex_positive(d: Vec2, flag: ToricFlag) -> Vec2:
    """Orient d so that the flag order increases along it."""
    return d if flag_key(flag, d) > (0, 0) else -d


def max_anchored_zonotope(region: Polygon, anchor: Vec2, gens: Sequence[Vec2], k_max: Optional[int] = None):
    """Maximize total lattice length of anchor + sum l_i [0, g_i] inside region.

    Containment is a packing LP (all coefficients >= 0), so rounding the
    optimum down to denominators dividing k_max keeps it feasible.
    """
    anchor = as_vec(anchor)
    if not gens or not region.contains(anchor):
        return Fraction(0), [Fraction(0)] * len(gens)
    A, b = [], []
    for h in region.halfplanes:
        A.append([max(Fraction(0), -h.normal.dot(g)) for g in gens])
        b.append(h.value(anchor))
    best, x = lp.maximize([1] * len(gens), A, b)
    if k_max is not None and lcm(*[xi.denominator for xi in x]) > k_max:
        x = [Fraction(int(xi * k_max), k_max) for xi in x]
        best = sum(x, Fraction(0))
    return best, x


def zonotope_section_search(p: Polygon, target, flag: ToricFlag, k_max: int = 12,
                            extra_generators: Sequence = ()) -> SectionWitness:
    target = as_vec(target)
    dirs = []
    for g in list(p.edge_directions()) + [primitive(as_vec(e)) for e in extra_generators]:
        g = lex_positive(g, flag)
        if g not in dirs:
            dirs.append(g)
    best, x = max_anchored_zonotope(p, target, dirs, k_max)
    factors = tuple(binomial(g, xi) for g, xi in zip(dirs, x) if xi > 0)
    return SectionWitness(target, factors, target, best)
