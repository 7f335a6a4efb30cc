"""Shipped example data and its self-validation.

The 16-gon fan is a reconstruction, so nothing downstream should trust it
before ``validate_sixteen_gon`` says so.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import gcd
from typing import Optional

from .geometry import AffineFn2D, HalfPlane, Polygon, Vec2, clip, vec
from .io import parse_factor, point, rat
from .nofunction import Factor, SectionWitness, binomial, factor, witness_problems
from .okounkov import ToricFlag, nobody_binomial
from .seshadri import witness_row_problems
from .toric import ToricDivisor, divisor, divisor_polytope, validate_fan

# x^3 y^2 - 3xy + y + 1: order 2 at (1, 1), Newton polygon a triangle
TRIANGLE = factor([(0, 0), (3, 2), (0, 1), (1, 1)], order=2)


def raw(name: str) -> dict:
    text = resources.files("okk.data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def data_path(name: str):
    return resources.files("okk.data").joinpath(f"{name}.json")


@dataclass(frozen=True)
class Row:
    name: str
    witness: SectionWitness


@dataclass(frozen=True)
class SixteenGon:
    divisor: ToricDivisor
    polygon: Polygon
    flag: ToricFlag
    direction: Vec2
    integral: Fraction
    rows: tuple[Row, ...]


def sixteen_gon() -> SixteenGon:
    d = raw("sixteen_gon")
    fan = validate_fan([tuple(r) for r in d["fan"]])
    D = divisor(fan, [rat(a, "divisor") for a in d["divisor"]])
    i, j = d["flag"]["toric"]
    rows = []
    for r in d["rows"]:
        fs = tuple(parse_factor(f, r["name"]) for f in r["factors"])
        w = SectionWitness(point(r["shift"], "shift"), fs, point(r["toric"], "toric"),
                           rat(r["order"], "order"), point(r["binomial"], "binomial"))
        rows.append(Row(r["name"], w))
    return SixteenGon(D, divisor_polytope(D), ToricFlag.of(fan, i, j), vec(*d["flag"]["binomial"]),
                      rat(d["integral"], "integral"), tuple(rows))


@dataclass(frozen=True)
class Validation:
    ok: bool
    failing_row: Optional[str] = None
    reason: str = ""


def validate_sixteen_gon(data: Optional[SixteenGon] = None) -> Validation:
    """The witness rows must all validate and the polytope must contain (19, 9)."""
    g = sixteen_gon() if data is None else data
    if not g.polygon.contains(vec(19, 9)):
        return Validation(False, None, "polytope does not contain (19, 9)")
    body = nobody_binomial(g.divisor, g.direction)
    for r in g.rows:
        problems = witness_row_problems(r.witness, g.polygon, body, g.flag)
        if problems:
            return Validation(False, r.name, "; ".join(problems))
    return Validation(True)


# -- the sections per region ----------------------------------------------------------

def _affine(c) -> AffineFn2D:
    a, b, k = (rat(x, "coefficient") for x in c)
    return AffineFn2D(vec(a, b), k)


@dataclass(frozen=True)
class RegionCheck:
    region: int
    polygon: Polygon
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def region_checks(data: Optional[SixteenGon] = None) -> list[RegionCheck]:
    """Check each tabulated region's section family at the region's vertices.

    Exponents, Newton polygon support and order are all affine in the
    region point, so checking vertices covers the whole region.
    """
    g = sixteen_gon() if data is None else data
    out = []
    for r in raw("sixteen_gon")["regions"]:
        hs = []
        for c in r["ineq"]:
            f = _affine(c)
            # f(m) >= 0  <=>  <m, g> >= -k, scaled to a primitive integral normal
            den = f.gradient.x.denominator * f.gradient.y.denominator
            n = vec(f.gradient.x * den, f.gradient.y * den)
            gg = gcd(int(n.x), int(n.y))
            hs.append(HalfPlane(vec(n.x / gg, n.y / gg), f.constant * den / gg))
        region = clip(g.polygon, hs)
        problems = []
        if region.dim < 2:
            problems.append("region is degenerate inside the polytope")
        order = _affine(r["order"])
        for m in region.vertices:
            fs = []
            for kind, e in r["factors"]:
                ex = _affine(e)(m)
                if ex < 0:
                    problems.append(f"negative exponent {ex} at {m}")
                    continue
                if ex == 0:
                    continue
                if kind == "triangle":
                    fs.append(Factor(TRIANGLE.support, ex, TRIANGLE.order))
                else:
                    fs.append(binomial(tuple(kind), ex))
            w = SectionWitness(m, tuple(fs), m, order(m))
            problems += [f"{p} at {m}" for p in witness_problems(w, g.polygon, g.flag)]
        out.append(RegionCheck(r["region"], region, tuple(problems)))
    return out


def f1_example():
    from .io import load
    with resources.as_file(data_path("f1_example")) as p:
        return load(p)


def quadrilateral():
    from .io import load
    with resources.as_file(data_path("quadrilateral")) as p:
        return load(p)
