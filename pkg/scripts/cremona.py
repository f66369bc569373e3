"""Cremona transformations through a Bordiga scroll, in general and special position."""

import argparse

from scrollmaps.config import DEFAULT_PRIME, RunConfig
from scrollmaps.scrolls.pipelines import run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    ap.add_argument("--seeds", type=int, nargs="+", default=[1])
    args = ap.parse_args()
    for seed in args.seeds:
        for special in (False, True):
            rep = run(RunConfig(pipeline="cremona", prime=args.prime, seed=seed, special=special))
            t = rep.entry("T.type")
            print(f"seed {seed} {'special' if special else 'general'}: type {t.computed if t else '-'} "
                  f"({'PASS' if rep.ok else 'FAIL'}, {rep.timings['total']:.1f}s)")


if __name__ == "__main__":
    main()
