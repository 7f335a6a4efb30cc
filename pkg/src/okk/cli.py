"""okk command line.

    okk COMMAND PROBLEM.json [--json] [--svg PATH]

Exit codes: 0 success (certified / verdict true), 1 gap or negative verdict,
2 input error, 3 internal verification failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from typing import Callable, Optional

from . import io, svg
from .cox import homogenize_coefficients
from .errors import InputError, ParseError, Refusal, VerificationFailure
from .geometry import Polygon, area
from .nofunction import (ab_upper_bound, is_anti_blocking, opposite_vertex, par_region,
                         strategy_certificate, toric_no_function)
from .okounkov import (ToricFlag, beta_profile, binomial_body_of_polygon, chamber_map,
                       nobody_binomial, nobody_toric)
from .seshadri import DEFAULT_KMAX, seshadri_certificate, zwc_check
from .toric import core, divisor_polytope, is_ample, is_big, is_nef
from .zariski import positive_part_polytope, zariski_decompose

log = logging.getLogger("okk")


class Outcome:
    def __init__(self, result: dict, text: list[str], code: int = 0, picture: Optional[str] = None):
        self.result, self.text, self.code, self.picture = result, text, code, picture


def _need(pf: io.ProblemFile, what: str):
    if what == "divisor" and pf.divisor is None:
        raise ParseError("$: this command needs 'fan' and 'divisor'")
    if what == "direction" and pf.direction is None:
        raise ParseError("$.flag: this command needs a binomial direction")
    if what == "toric" and pf.toric_flag is None:
        raise ParseError("$.flag: this command needs a toric ray pair")


def _polygon(pf: io.ProblemFile) -> Polygon:
    if pf.polygon is not None:
        return pf.polygon
    _need(pf, "divisor")
    return divisor_polytope(pf.divisor)


def _toric_flag(pf: io.ProblemFile) -> ToricFlag:
    _need(pf, "toric")
    try:
        return ToricFlag.of(pf.fan, *pf.toric_flag)
    except ValueError as e:
        raise ParseError(f"$.flag.toric: {e}") from None


def _k_max(pf: io.ProblemFile) -> int:
    if pf.k_max is not None:
        return pf.k_max
    env = os.environ.get("OKK_KMAX")
    if env is None:
        return DEFAULT_KMAX
    try:
        k = int(env)
    except ValueError:
        raise ParseError(f"OKK_KMAX: not an integer: {env!r}") from None
    if k < 1:
        raise ParseError("OKK_KMAX: must be positive")
    return k


def _pl(f) -> dict:
    return {"breakpoints": list(f.breakpoints), "values": list(f.values)}


def _affine(f) -> dict:
    return {"gradient": f.gradient, "constant": f.constant}


# -- commands -----------------------------------------------------------------------

def cmd_polytope(pf):
    p = _polygon(pf)
    res = {"vertices": p, "area": area(p) if not p.is_empty else Fraction(0),
           "halfplanes": [{"normal": h.normal, "offset": h.offset} for h in p.halfplanes]}
    if pf.divisor is not None and pf.polygon is None:
        res.update(big=is_big(pf.divisor), nef=is_nef(pf.divisor), ample=is_ample(pf.divisor))
    text = [f"vertices: {', '.join(map(repr, p.vertices)) or 'empty'}", f"area: {io.fmt(res['area'])}"]
    for k in ("big", "nef", "ample"):
        if k in res:
            text.append(f"{k}: {res[k]}")
    return Outcome(res, text, picture=svg.render(p, title="polytope"))


def cmd_homogenize(pf):
    if pf.fan is None or pf.support is None:
        raise ParseError("$: this command needs 'fan' and 'support'")
    d = homogenize_coefficients(pf.support, pf.fan)
    return Outcome({"coefficients": list(d.coeffs)},
                   ["coefficients: " + " ".join(io.fmt(a) for a in d.coeffs)])


def cmd_zariski(pf):
    _need(pf, "divisor")
    z = zariski_decompose(pf.divisor)
    res = {"positive": list(z.positive.coeffs), "negative": list(z.negative.coeffs),
           "support_of_N": list(z.support_of_N), "blocks": [list(b) for b in z.blocks]}
    text = ["P = " + " ".join(io.fmt(a) for a in z.positive.coeffs),
            "N = " + " ".join(io.fmt(a) for a in z.negative.coeffs),
            f"supp N: {list(z.support_of_N)}"]
    if pf.t is not None:
        # Delta(P(D - t C)) for the binomial curve C of the flag direction
        _need(pf, "direction")
        q = positive_part_polytope(pf.divisor, pf.direction, pf.t)
        res["positive_part_polytope"] = q
        text.append(f"Delta(P(D - {io.fmt(pf.t)} C)): {', '.join(map(repr, q.vertices)) or 'empty'}")
    return Outcome(res, text)


def cmd_beta(pf):
    _need(pf, "direction")
    p = _polygon(pf)
    b = beta_profile(p, pf.direction)
    res = _pl(b)
    text = ["breakpoints: " + " ".join(io.fmt(t) for t in b.breakpoints),
            "values: " + " ".join(io.fmt(y) for y in b.values)]
    return Outcome(res, text, picture=svg.render(beta=b, title="beta"))


def cmd_nobody(pf):
    res, text, pic = {}, [], None
    if pf.toric_flag is not None:
        _need(pf, "divisor")
        body, (f, g) = nobody_toric(pf.divisor, _toric_flag(pf))
        res["toric"] = {"body": body.body, "phi": [_affine(f), _affine(g)]}
        text.append(f"toric body: {', '.join(map(repr, body.body.vertices))}")
        pic = svg.render(body.body, title="toric body")
    if pf.direction is not None:
        if pf.polygon is not None:
            body = binomial_body_of_polygon(pf.polygon, pf.direction)
        else:
            _need(pf, "divisor")
            body = nobody_binomial(pf.divisor, pf.direction)
        res["binomial"] = {"body": body.body, "mu": body.mu, "area": area(body.body), "beta": _pl(body.beta)}
        text.append(f"binomial body: {', '.join(map(repr, body.body.vertices))}")
        text.append(f"area: {io.fmt(area(body.body))}")
        pic = svg.render(body.body, beta=body.beta, title="binomial body")
    if not res:
        raise ParseError("$.flag: give a toric ray pair or a binomial direction")
    return Outcome(res, text, picture=pic)


def cmd_plmap(pf):
    _need(pf, "direction")
    p = _polygon(pf)
    cm = chamber_map(p, pf.direction)
    res = {"chambers": [{"domain": c, "map": [_affine(f), _affine(g)], "image": im}
                        for c, (f, g), im in zip(cm.chambers, cm.maps, cm.image_pieces())],
           "determinants": cm.determinants(), "image": cm.image()}
    text = [f"{len(cm.chambers)} chambers", "determinants: " + " ".join(io.fmt(x) for x in cm.determinants()),
            f"image: {', '.join(map(repr, cm.image().vertices))}"]
    return Outcome(res, text, picture=svg.render(p, chambers=cm.chambers, title="chambers"))


def cmd_nofun(pf):
    _need(pf, "divisor")
    flag = _toric_flag(pf)
    p = divisor_polytope(pf.divisor)
    q = opposite_vertex(p, flag)
    res = {"opposite_vertex": q, "anti_blocking": is_anti_blocking(p),
           "ab_bound": _affine(ab_upper_bound(p, q).pieces[0]), "par_region": par_region(p, q)}
    text = [f"opposite vertex: {q!r}", f"par region: {', '.join(map(repr, res['par_region'].vertices))}"]
    if pf.cone is not None:
        try:
            f = toric_no_function(pf.divisor, flag, pf.cone)
        except ValueError as e:
            raise ParseError(f"$.options.cone: {e}") from None
        res["function"] = _affine(f.pieces[0])
        g = f.pieces[0]
        text.append(f"phi_Z(m) = <m, {g.gradient!r}> + {io.fmt(g.constant)}")
    return Outcome(res, text)


def cmd_certify(pf):
    _need(pf, "divisor")
    _need(pf, "direction")
    flag = _toric_flag(pf) if pf.toric_flag is not None else None
    c = strategy_certificate(pf.divisor, pf.direction, pf.witnesses, flag)
    res = {"status": c.status, "certified": c.certified, "lower": c.lower_integral,
           "upper": c.upper_integral, "shortfalls": [list(s) for s in c.shortfalls]}
    text = [f"{c.status}, lower = {io.fmt(c.lower_integral)}, upper = {io.fmt(c.upper_integral)}"]
    if c.certified:
        text[0] = f"Certified, integral = {io.fmt(c.lower_integral)}"
    return Outcome(res, text, code=0 if c.certified else 1)


def cmd_zwc(pf):
    _need(pf, "direction")
    p = _polygon(pf)
    rep = zwc_check(p, pf.direction, pf.extra_generators)
    res = {"verdict": rep.verdict, "direction": rep.direction, "generators": list(rep.generators),
           "extended_vertices": [{"point": e.point, "length": e.length, "slab": e.slab,
                                  "required_width": e.required_width, "best_length": e.best_length,
                                  "ok": e.ok, "witness": [list(g) for g in e.generators]}
                                 for e in rep.entries]}
    text = [f"verdict: {rep.verdict}"]
    for e in rep.failures:
        text.append(f"fails at {e.point!r}: width {io.fmt(e.required_width)}, best {io.fmt(e.best_length)}")
    if not rep.verdict:
        text.append("(not found with this generator set)")
    return Outcome(res, text, code=0 if rep.verdict else 1,
                   picture=svg.render(p, chambers=[e.slab for e in rep.failures], title="zwc"))


def cmd_core(pf):
    _need(pf, "divisor")
    c = core(pf.divisor)
    res = {"r_star": c.r_star, "q": c.q, "core": c.core}
    text = [f"r* = {io.fmt(c.r_star)}", f"q = {'undefined' if c.q is None else io.fmt(c.q)}",
            f"core: {', '.join(map(repr, c.core.vertices))}"]
    return Outcome(res, text)


def cmd_seshadri(pf):
    _need(pf, "direction")
    target = pf.polygon if pf.polygon is not None else pf.divisor
    if target is None:
        _need(pf, "divisor")
    try:
        c = seshadri_certificate(target, pf.direction, pf.extra_generators, _k_max(pf))
    except Refusal as r:
        res = {"certified": False, "reason": r.reason, "point": r.point}
        return Outcome(res, [f"refused: {r}"], code=1)
    res = {"certified": True, "integral": c.integral, "body": c.body.body, "conclusion": c.conclusion,
           "witnesses": [{"point": w.target_point, "binomial_image": w.binomial_image,
                          "order": w.claimed_order,
                          "factors": [[f.support[1], f.multiplicity] for f in w.factors]}
                         for w in c.witnesses]}
    return Outcome(res, [f"integral = {io.fmt(c.integral)}", c.conclusion],
                   picture=svg.render(c.body.body, title="binomial body"))


COMMANDS: dict[str, Callable] = {
    "polytope": cmd_polytope, "homogenize": cmd_homogenize, "zariski": cmd_zariski,
    "beta": cmd_beta, "nobody": cmd_nobody, "plmap": cmd_plmap, "nofun": cmd_nofun,
    "certify": cmd_certify, "zwc": cmd_zwc, "core": cmd_core, "seshadri": cmd_seshadri,
}


def run(command: str, path: str, as_json: bool = False, svg_path: Optional[str] = None,
        out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        pf = io.load(path)
        o = COMMANDS[command](pf)
    except InputError as e:
        err.write(f"error: {type(e).__name__}: {e}\n")
        return 2
    except (ValueError, ZeroDivisionError) as e:
        err.write(f"error: InputError: {e}\n")
        return 2
    except VerificationFailure as e:
        err.write(f"error: VerificationFailure: {e}\n")
        return 3
    doc = {"command": command, "input": os.path.basename(path), "result": o.result, "exit_code": o.code}
    if svg_path:
        doc["svg"] = svg_path
        with open(svg_path, "w", encoding="utf-8") as fh:
            fh.write(o.picture or svg.render(title=command))
    if as_json:
        out.write(io.dumps(doc))
    else:
        out.write(f"okk {command} {os.path.basename(path)}\n")
        for line in o.text:
            out.write(line + "\n")
    return o.code


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="okk", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("problem", help="JSON problem file")
    ap.add_argument("--json", action="store_true", help="print the machine-readable result block")
    ap.add_argument("--svg", metavar="PATH", help="write an SVG picture")
    ap.add_argument("-v", "--verbose", action="store_true")
    a = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(name)s: %(message)s")
    return run(a.command, a.problem, a.json, a.svg)


if __name__ == "__main__":
    sys.exit(main())
