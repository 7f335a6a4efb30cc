"""The non-zwc quadrilateral: which failures are real, which are search artefacts.

    python3 scripts/quadrilateral_zwc.py
"""

from okk.datasets import quadrilateral
from okk.errors import Refusal
from okk.io import fmt
from okk.seshadri import seshadri_certificate, zwc_check


def show(label, rep):
    print(f"{label}: verdict {rep.verdict}")
    for e in rep.entries:
        mark = "ok " if e.ok else "FAIL"
        print(f"  {mark} {e.point!r:14s} length {fmt(e.length):>4s}  width {fmt(e.required_width)}"
              f"  best {fmt(e.best_length)}")


def main():
    pf = quadrilateral()
    p, v = pf.polygon, pf.direction
    show("edge directions and v", zwc_check(p, v))
    show("plus (0,1) and (1,1)", zwc_check(p, v, [(0, 1), (1, 1)]))
    try:
        seshadri_certificate(p, v)
    except Refusal as r:
        print("certificate refused:", r)


if __name__ == "__main__":
    main()
