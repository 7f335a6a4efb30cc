"""Random sweep over the main identities; prints counts and timings.

    python3 scripts/property_sweep.py --seed 1 --n 300
"""

import argparse
import os
import random
import sys
import time
from collections import Counter

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

from gen import ample_divisor, anti_blocking_divisor, effective_divisor, primitive_direction, smooth_fan  # noqa: E402
from okk.geometry import area, vec  # noqa: E402
from okk.nofunction import binomial, opposite_vertex, strategy_certificate, witness  # noqa: E402
from okk.okounkov import ToricFlag, chamber_map, nobody_binomial  # noqa: E402
from okk.seshadri import seshadri_certificate, zwc_check  # noqa: E402
from okk.errors import Refusal  # noqa: E402
from okk.zariski import zariski_decompose  # noqa: E402


def timed(label, fn, n):
    t0 = time.perf_counter()
    stats = Counter(fn() for _ in range(n))
    dt = time.perf_counter() - t0
    print(f"{label:28s} n={n:4d}  {dt:6.2f} s  {dict(sorted(stats.items()))}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n", type=int, default=100)
    a = ap.parse_args()
    rng = random.Random(a.seed)

    def zariski():
        z = zariski_decompose(effective_divisor(rng, smooth_fan(rng)))
        return f"|supp N|={len(z.support_of_N)}"

    def volume():
        d, v = ample_divisor(rng), primitive_direction(rng, 5)
        p = divisor_polytope_of(d)
        ok = area(p) == area(nobody_binomial(d, v).body) and chamber_map(p, v).image() == nobody_binomial(d, v).body
        return "ok" if ok else "MISMATCH"

    def anti_blocking():
        d = anti_blocking_divisor(rng)
        p = divisor_polytope_of(d)
        s = len(d.fan)
        flag = next(f for f in (ToricFlag.of(d.fan, i, (i + 1) % s) for i in range(s))
                    if opposite_vertex(p, f) == vec(0, 0))
        box = [witness(m, [binomial((-1, 0), m.x), binomial((0, -1), m.y)], m, m.x + m.y) for m in p.vertices]
        return strategy_certificate(d, (1, 0), box, flag).status

    def zwc_random():
        d, v = ample_divisor(rng, 7), primitive_direction(rng, 2)
        p = divisor_polytope_of(d)
        if not zwc_check(p, v).verdict:
            return "not zwc (search)"
        try:
            seshadri_certificate(d, v)
            return "certified"
        except Refusal as r:
            return f"refused: {r.reason}"

    timed("Zariski decomposition", zariski, a.n)
    timed("volume-preserving map", volume, a.n)
    timed("anti-blocking box witnesses", anti_blocking, max(1, a.n // 2))
    timed("zwc + Seshadri certificate", zwc_random, max(1, a.n // 2))


def divisor_polytope_of(d):
    from okk.toric import divisor_polytope
    return divisor_polytope(d)


if __name__ == "__main__":
    main()
