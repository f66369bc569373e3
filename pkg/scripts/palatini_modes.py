"""Compare the two birational maps V -> P^2 on the Palatini scroll.

For each mode, list the contracted curves, their multiplicities in the base
locus and the resulting n, deg Σ, deg B2 and mult_P B2.
"""

import argparse

from scrollmaps.config import DEFAULT_PRIME, RunConfig
from scrollmaps.scrolls.palatini import MODES
from scrollmaps.scrolls.pipelines import run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    for mode in MODES:
        rep = run(RunConfig(pipeline="thm31", variety="palatini", mode=mode, prime=args.prime, seed=args.seed))
        v = rep.values
        print(f"== {mode}: {'PASS' if rep.ok else 'FAIL'} in {rep.timings['total']:.1f}s")
        print(f"   n = {v.get('n')}, deg E_inf = {v.get('deg_E_inf')}")
        for claim in ("cross.deg_sigma", "cross.deg_B2", "cross.mult_B2", "B1.B2"):
            e = rep.entry(claim)
            print(f"   {claim:16} {e.computed if e else '-'}")
        for name, (dim, deg) in v.get("v.exceptional_curves", []):
            print(f"   {name}: curve of degree {deg}, delta = {v.get(name + '.delta')}")


if __name__ == "__main__":
    main()
