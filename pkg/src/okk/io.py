"""Problem files (strict JSON) and exact serialization of results.

Rationals travel as "p/q" strings; plain JSON integers are accepted too.
Floats are rejected: they cannot be read back exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .errors import ParseError
from .geometry import Polygon, Vec2, vec
from .nofunction import Factor, SectionWitness
from .toric import Fan2D, ToricDivisor, validate_fan

_RAT = re.compile(r"^\s*-?\d+(/\d+)?\s*$")

TOP_KEYS = {"fan", "divisor", "polygon", "flag", "witnesses", "options", "support"}
FLAG_KEYS = {"toric", "binomial"}
OPTION_KEYS = {"k_max", "extra_generators", "cone", "t"}
WITNESS_KEYS = {"shift", "factors", "target", "order", "binomial_image"}
FACTOR_KEYS = {"support", "multiplicity", "order", "curve_order", "point_order"}


@dataclass
class ProblemFile:
    fan: Optional[Fan2D] = None
    divisor: Optional[ToricDivisor] = None
    polygon: Optional[Polygon] = None
    toric_flag: Optional[tuple[int, int]] = None
    direction: Optional[Vec2] = None
    witnesses: list[SectionWitness] = field(default_factory=list)
    support: Optional[list[Vec2]] = None
    k_max: Optional[int] = None
    extra_generators: list[Vec2] = field(default_factory=list)
    cone: Optional[tuple[int, int]] = None
    t: Optional[Fraction] = None


def rat(x: Any, where: str) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RAT.match(x):
        try:
            return Fraction(x.strip())
        except ZeroDivisionError:
            raise ParseError(f"{where}: zero denominator") from None
    raise ParseError(f"{where}: expected an integer or a \"p/q\" string, got {x!r}")


def integer(x: Any, where: str) -> int:
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    raise ParseError(f"{where}: expected an integer, got {x!r}")


def point(x: Any, where: str, integral: bool = False) -> Vec2:
    if not isinstance(x, list) or len(x) != 2:
        raise ParseError(f"{where}: expected a pair")
    conv = integer if integral else rat
    return vec(conv(x[0], f"{where}[0]"), conv(x[1], f"{where}[1]"))


def _points(x: Any, where: str, integral: bool = False) -> list[Vec2]:
    if not isinstance(x, list):
        raise ParseError(f"{where}: expected a list")
    return [point(p, f"{where}[{k}]", integral) for k, p in enumerate(x)]


def _object(x: Any, where: str, allowed: set) -> dict:
    if not isinstance(x, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = sorted(set(x) - allowed)
    if unknown:
        raise ParseError(f"{where}: unknown field {unknown[0]!r}")
    return x


def parse_factor(x: Any, where: str) -> Factor:
    o = _object(x, where, FACTOR_KEYS)
    if "support" not in o:
        raise ParseError(f"{where}: missing 'support'")
    sup = tuple(_points(o["support"], f"{where}.support"))
    if len(sup) < 2:
        raise ParseError(f"{where}.support: a factor needs at least two monomials")
    opt = {k: rat(o[k], f"{where}.{k}") for k in ("order", "curve_order", "point_order") if k in o}
    mult = rat(o.get("multiplicity", 1), f"{where}.multiplicity")
    return Factor(sup, mult, opt.get("order"), opt.get("curve_order"), opt.get("point_order"))


def parse_witness(x: Any, where: str) -> SectionWitness:
    o = _object(x, where, WITNESS_KEYS)
    for k in ("shift", "target", "order"):
        if k not in o:
            raise ParseError(f"{where}: missing {k!r}")
    fs = o.get("factors", [])
    if not isinstance(fs, list):
        raise ParseError(f"{where}.factors: expected a list")
    img = point(o["binomial_image"], f"{where}.binomial_image") if "binomial_image" in o else None
    return SectionWitness(point(o["shift"], f"{where}.shift"),
                          tuple(parse_factor(f, f"{where}.factors[{k}]") for k, f in enumerate(fs)),
                          point(o["target"], f"{where}.target"), rat(o["order"], f"{where}.order"), img)


def parse_problem(doc: Any) -> ProblemFile:
    o = _object(doc, "$", TOP_KEYS)
    pf = ProblemFile()
    if "fan" in o:
        pf.fan = validate_fan(_points(o["fan"], "$.fan", integral=True))
    if "divisor" in o:
        if pf.fan is None:
            raise ParseError("$.divisor: a divisor needs a fan")
        if not isinstance(o["divisor"], list):
            raise ParseError("$.divisor: expected a list")
        cs = [rat(a, f"$.divisor[{k}]") for k, a in enumerate(o["divisor"])]
        if len(cs) != len(pf.fan):
            raise ParseError(f"$.divisor: {len(cs)} coefficients for {len(pf.fan)} rays")
        pf.divisor = ToricDivisor(pf.fan, tuple(cs))
    if "polygon" in o:
        pts = _points(o["polygon"], "$.polygon")
        if not pts:
            raise ParseError("$.polygon: no points")
        pf.polygon = Polygon.hull(pts)
    if "flag" in o:
        fl = _object(o["flag"], "$.flag", FLAG_KEYS)
        if "toric" in fl:
            i, j = point(fl["toric"], "$.flag.toric", integral=True)
            pf.toric_flag = (int(i), int(j))
        if "binomial" in fl:
            pf.direction = point(fl["binomial"], "$.flag.binomial", integral=True)
    if "witnesses" in o:
        if not isinstance(o["witnesses"], list):
            raise ParseError("$.witnesses: expected a list")
        pf.witnesses = [parse_witness(w, f"$.witnesses[{k}]") for k, w in enumerate(o["witnesses"])]
    if "support" in o:
        pf.support = _points(o["support"], "$.support", integral=True)
    if "options" in o:
        op = _object(o["options"], "$.options", OPTION_KEYS)
        if "k_max" in op:
            pf.k_max = integer(op["k_max"], "$.options.k_max")
            if pf.k_max < 1:
                raise ParseError("$.options.k_max: must be positive")
        if "extra_generators" in op:
            pf.extra_generators = _points(op["extra_generators"], "$.options.extra_generators", integral=True)
        if "cone" in op:
            i, j = point(op["cone"], "$.options.cone", integral=True)
            pf.cone = (int(i), int(j))
        if "t" in op:
            pf.t = rat(op["t"], "$.options.t")
    return pf


def loads(text: str) -> ProblemFile:
    try:
        doc = json.loads(text, parse_float=_no_float, parse_constant=_no_float)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    return parse_problem(doc)


def load(path) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"{path}: {e}") from None
    return loads(text)


def _no_float(s):
    raise ParseError(f"floating point literal {s} is not allowed; use a \"p/q\" string")


# -- output -----------------------------------------------------------------------

def fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_jsonable(x: Any) -> Any:
    """Exact, deterministic plain-JSON form of library values."""
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, Vec2):
        return [fmt(x.x), fmt(x.y)]
    if isinstance(x, Polygon):
        return [to_jsonable(v) for v in x.vertices]
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(doc: Any) -> str:
    return json.dumps(to_jsonable(doc), sort_keys=True, indent=2) + "\n"
