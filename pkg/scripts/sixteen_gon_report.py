"""Check the shipped 16-gon reconstruction and report every derived quantity.

    python3 scripts/sixteen_gon_report.py [--svg OUT.svg]
"""

import argparse

from okk import svg
from okk.datasets import region_checks, sixteen_gon, validate_sixteen_gon
from okk.geometry import area
from okk.io import fmt
from okk.okounkov import nobody_binomial
from okk.seshadri import seshadri_certificate, zwc_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--svg", help="write the binomial-flag body here")
    a = ap.parse_args()

    g = sixteen_gon()
    print("vertices:", ", ".join(map(repr, g.polygon.vertices)))
    print("area:", fmt(area(g.polygon)))
    v = validate_sixteen_gon(g)
    print("reconstruction valid:", v.ok, "" if v.ok else f"(row {v.failing_row}: {v.reason})")

    body = nobody_binomial(g.divisor, g.direction)
    print("binomial body:", ", ".join(map(repr, body.body.vertices)))
    for r in g.rows:
        w = r.witness
        print(f"  {r.name}: toric {w.target_point!r}  binomial {w.binomial_image!r}  order {fmt(w.claimed_order)}")

    rep = zwc_check(g.polygon, g.direction)
    print(f"zwc for v = {g.direction!r}: {rep.verdict} ({len(rep.entries)} extended vertices)")
    c = seshadri_certificate(g.divisor, g.direction)
    print("integral of a'+b':", fmt(c.integral), "(expected", fmt(g.integral) + ")")

    print("section families per region:")
    for rc in region_checks(g):
        status = "ok" if rc.ok else "FAILS: " + rc.problems[0]
        print(f"  region {rc.region:2d}: {status}")

    if a.svg:
        with open(a.svg, "w", encoding="utf-8") as fh:
            fh.write(svg.render(body.body, beta=body.beta, title="16-gon binomial body"))


if __name__ == "__main__":
    main()
