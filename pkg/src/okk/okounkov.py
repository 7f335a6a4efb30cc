"""Newton-Okounkov bodies for torus-invariant flags and binomial-curve flags.

For a binomial flag (curve {x^v = 1}, general point on it) the body is the
subgraph of beta(t) = MV(P cap (P + t v), [0, v]) over [0, mu]. It is computed
by sweeping the sunny side of P along v. Internally we change basis so that
v = (1, 0); the second coordinate is then xi(m) with xi = v rotated by +90
degrees. None of that leaks out: results are in M-coordinates or in body
coordinates (t, s).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cox import binomial_curve_divisor
from .errors import NotAmple, NotBig, NuPositive
from .geometry import (AffineFn2D, HalfPlane, Polygon, Vec2, annihilator, apply_linear, area,
                       as_vec, clip, det, primitive, require_primitive, vec)
from .toric import ToricDivisor, divisor_polytope, is_ample, is_big
from .zariski import tighten_offsets


@dataclass(frozen=True)
class ToricFlag:
    """Y1 = D_{rho_i}, Y2 = D_{rho_i} cap D_{rho_j} (rays i and j adjacent)."""

    i: int
    j: int
    u_i: Vec2
    u_j: Vec2

    @staticmethod
    def of(fan, i: int, j: int) -> "ToricFlag":
        s = len(fan)
        i, j = i % s, j % s
        if (j - i) % s not in (1, s - 1):
            raise ValueError(f"rays {i} and {j} are not adjacent")
        return ToricFlag(i, j, fan.rays[i], fan.rays[j])


@dataclass(frozen=True)
class BinomialFlag:
    v: Vec2

    def __post_init__(self):
        require_primitive(self.v)


@dataclass(frozen=True)
class PLFunction1D:
    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        bp = self.breakpoints
        if len(bp) != len(self.values) or not bp:
            raise ValueError("one value per breakpoint is required")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    def __call__(self, t) -> Fraction:
        bp, vals = self.breakpoints, self.values
        t = Fraction(t)
        if t < bp[0] or t > bp[-1]:
            raise ValueError(f"{t} outside [{bp[0]}, {bp[-1]}]")
        k = bisect_right(bp, t) - 1
        if k == len(bp) - 1:
            return vals[-1]
        return vals[k] + (vals[k + 1] - vals[k]) * (t - bp[k]) / (bp[k + 1] - bp[k])

    def is_concave(self) -> bool:
        bp, vals = self.breakpoints, self.values
        slopes = [(vals[k + 1] - vals[k]) / (bp[k + 1] - bp[k]) for k in range(len(bp) - 1)]
        return all(a >= b for a, b in zip(slopes, slopes[1:]))

    def subgraph(self) -> Polygon:
        pts = [vec(self.breakpoints[0], 0), vec(self.breakpoints[-1], 0)]
        pts += [Vec2(t, b) for t, b in zip(self.breakpoints, self.values)]
        return Polygon.hull(pts)


@dataclass(frozen=True)
class ChamberedPLMap:
    """Piecewise affine map; maps[k] = (first coordinate, second coordinate)."""

    chambers: tuple[Polygon, ...]
    maps: tuple[tuple[AffineFn2D, AffineFn2D], ...]

    def locate(self, m) -> int:
        m = as_vec(m)
        for k, c in enumerate(self.chambers):
            if c.contains(m):
                return k
        raise ValueError(f"{m} lies outside the domain")

    def __call__(self, m) -> Vec2:
        f, g = self.maps[self.locate(m)]
        return Vec2(f(m), g(m))

    def determinants(self) -> list[Fraction]:
        return [det(f.gradient, g.gradient) for f, g in self.maps]

    def image_pieces(self) -> list[Polygon]:
        return [Polygon.hull(Vec2(f(v), g(v)) for v in c.vertices)
                for c, (f, g) in zip(self.chambers, self.maps)]

    def image(self) -> Polygon:
        return Polygon.hull(v for piece in self.image_pieces() for v in piece.vertices)


@dataclass(frozen=True)
class NOBody:
    body: Polygon
    flag_kind: str
    beta: Optional[PLFunction1D] = None
    mu: Fraction = Fraction(0)
    nu: Fraction = Fraction(0)
    direction: Optional[Vec2] = None
    flag: Optional[ToricFlag] = None


def nobody_toric(d: ToricDivisor, flag: ToricFlag):
    """Body for a torus-invariant flag and the coordinate map m -> body point."""
    if not is_big(d):
        raise NotBig("Delta(D) is not full-dimensional")
    p = divisor_polytope(d)
    shift = vec(d.coeffs[flag.i], d.coeffs[flag.j])
    body = apply_linear(p, (flag.u_i, flag.u_j), shift)
    phi = (AffineFn2D(flag.u_i, shift.x), AffineFn2D(flag.u_j, shift.y))
    mu = max(v.x for v in body.vertices)
    return NOBody(body, "toric", mu=mu, flag=flag), phi


def sunny_side(p: Polygon, v) -> list[int]:
    v = as_vec(v)
    if p.dim < 2:
        return []
    return [k for k, h in enumerate(p.halfplanes) if h.normal.dot(v) > 0]


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (1 if a >= 0 else -1, 0)
    x, y = _ext_gcd(b, a % b)
    return (y, x - (a // b) * y)


def _rational_halfplane(a, b, c) -> HalfPlane:
    """{(x, y) : a x + b y + c >= 0} with rational a, b, c."""
    n = primitive(vec(a, b))
    scale = n.x / a if a != 0 else n.y / b
    return HalfPlane(n, c * scale)


class Sweep:
    """Sunny-side sweep of a full-dimensional polygon along a primitive v."""

    def __init__(self, p: Polygon, v):
        if p.dim < 2:
            raise ValueError("sweep needs a full-dimensional polygon")
        self.v = v = require_primitive(v)
        self.p = p
        self.xi = annihilator(v)
        e1, e2 = _ext_gcd(int(v.x), int(v.y))
        self.eta = vec(e1, e2)
        assert self.eta.dot(v) == 1
        self.pp = apply_linear(p, (self.eta, self.xi))
        self.heights = sorted({w.y for w in self.pp.vertices})
        self.lefts, self.rights = [], []
        for s in self.heights:
            lo, hi = self._ends(s)
            self.lefts.append(lo)
            self.rights.append(hi)
        self.chords = [r - l for l, r in zip(self.lefts, self.rights)]
        self.mu = max(self.chords)
        self.times = sorted({Fraction(0)} | set(self.chords))

    def _ends(self, s):
        xs = []
        vs = self.pp.vertices
        for k in range(len(vs)):
            a, b = vs[k], vs[(k + 1) % len(vs)]
            if a.y == s:
                xs.append(a.x)
            if (a.y - s) * (b.y - s) < 0:
                xs.append(a.x + (b.x - a.x) * (s - a.y) / (b.y - a.y))
        return min(xs), max(xs)

    def to_local(self, m) -> Vec2:
        m = as_vec(m)
        return Vec2(self.eta.dot(m), self.xi.dot(m))

    def from_local(self, w) -> Vec2:
        # inverse of rows (eta, xi), determinant eta x xi = 1
        w = as_vec(w)
        d = det(self.eta, self.xi)
        return Vec2((w.x * self.xi.y - w.y * self.eta.y) / d,
                    (self.eta.x * w.y - self.xi.x * w.x) / d)

    def _interp(self, ys, s):
        hs = self.heights
        k = bisect_right(hs, s) - 1
        if k >= len(hs) - 1:
            return ys[-1]
        return ys[k] + (ys[k + 1] - ys[k]) * (s - hs[k]) / (hs[k + 1] - hs[k])

    def left(self, s) -> Fraction:
        return self._interp(self.lefts, s)

    def chord_at(self, s) -> Fraction:
        return self._interp(self.chords, s)

    def lower(self, t) -> Fraction:
        """b(t) = min{s : chord(s) >= t}."""
        hs, cs = self.heights, self.chords
        for k in range(len(hs)):
            if cs[k] >= t:
                if k == 0:
                    return hs[0]
                return hs[k - 1] + (t - cs[k - 1]) * (hs[k] - hs[k - 1]) / (cs[k] - cs[k - 1])
        raise ValueError(f"t = {t} exceeds mu = {self.mu}")

    def upper(self, t) -> Fraction:
        hs, cs = self.heights, self.chords
        for k in range(len(hs) - 1, -1, -1):
            if cs[k] >= t:
                if k == len(hs) - 1:
                    return hs[-1]
                return hs[k + 1] - (t - cs[k + 1]) * (hs[k + 1] - hs[k]) / (cs[k] - cs[k + 1])
        raise ValueError(f"t = {t} exceeds mu = {self.mu}")

    def beta(self) -> PLFunction1D:
        ts = [t for t in self.times if t <= self.mu]
        return PLFunction1D(tuple(ts), tuple(self.upper(t) - self.lower(t) for t in ts))

    def psi(self, m) -> Vec2:
        w = self.to_local(m)
        t = w.x - self.left(w.y)
        return Vec2(t, w.y - self.lower(t))

    def psi_inverse(self, T) -> Vec2:
        T = as_vec(T)
        s = T.y + self.lower(T.x)
        return self.from_local(Vec2(T.x + self.left(s), s))

    def section(self, t) -> list[Vec2]:
        """Polyline P cap (Sun(P, v) + t v), bottom to top in xi."""
        lo, hi = self.lower(t), self.upper(t)
        ss = [lo] + [h for h in self.heights if lo < h < hi] + [hi]
        return [self.from_local(Vec2(self.left(s) + t, s)) for s in ss]

    def chamber_map(self) -> ChamberedPLMap:
        hs, ts = self.heights, [t for t in self.times if t <= self.mu]
        chambers, maps = [], []
        eta, xi = self.eta, self.xi
        for j in range(len(hs) - 1):
            h0, h1 = hs[j], hs[j + 1]
            slope = (self.lefts[j + 1] - self.lefts[j]) / (h1 - h0)
            icpt = self.lefts[j] - slope * h0
            # in local coordinates t = x - slope * y - icpt
            for k in range(len(ts) - 1):
                t0, t1 = ts[k], ts[k + 1]
                cut = [_rational_halfplane(0, 1, -h0), _rational_halfplane(0, -1, h1),
                       _rational_halfplane(1, -slope, -icpt - t0),
                       _rational_halfplane(-1, slope, icpt + t1)]
                local = clip(self.pp, cut)
                if local.dim < 2:
                    continue
                gamma = (self.lower(t1) - self.lower(t0)) / (t1 - t0)
                delta = self.lower(t0) - gamma * t0
                tf = AffineFn2D(eta - xi * slope, -icpt)
                sf = AffineFn2D(xi - tf.gradient * gamma, -tf.constant * gamma - delta)
                chambers.append(Polygon.hull(self.from_local(w) for w in local.vertices))
                maps.append((tf, sf))
        return ChamberedPLMap(tuple(chambers), tuple(maps))


def beta_profile(p: Polygon, v) -> PLFunction1D:
    return Sweep(p, v).beta()


def chamber_map(p: Polygon, v) -> ChamberedPLMap:
    return Sweep(p, v).chamber_map()


def _check_binomial_preconditions(d: ToricDivisor, v: Vec2) -> None:
    if not is_ample(d):
        raise NotAmple("binomial-flag bodies are only computed for ample D")
    # N(D) is supported where the facet inequality is not tight; works for
    # non-effective representatives too
    tight = tighten_offsets(d)
    neg = [i for i, (a, b) in enumerate(zip(d.coeffs, tight)) if a != b]
    curve = binomial_curve_divisor(v, d.fan)
    if any(curve.coeffs[i] != 0 for i in neg):
        raise NuPositive("the binomial curve meets the negative part of D")


def nobody_binomial(d: ToricDivisor, flag) -> NOBody:
    v = flag.v if isinstance(flag, BinomialFlag) else require_primitive(flag)
    _check_binomial_preconditions(d, v)
    beta = beta_profile(divisor_polytope(d), v)
    body = beta.subgraph()
    return NOBody(body, "binomial", beta=beta, mu=beta.breakpoints[-1], direction=v)


def binomial_body_of_polygon(p: Polygon, v) -> NOBody:
    """Same subgraph construction for a bare polygon (no divisor checks)."""
    v = require_primitive(v)
    beta = beta_profile(p, v)
    return NOBody(beta.subgraph(), "binomial", beta=beta, mu=beta.breakpoints[-1], direction=v)


def volume_check(p: Polygon, body: NOBody) -> bool:
    return area(p) == area(body.body)
