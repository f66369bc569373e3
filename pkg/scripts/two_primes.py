"""Run a pipeline at two primes and list every integer that was compared."""

import argparse

from scrollmaps.config import DEFAULT_PRIME, RunConfig
from scrollmaps.scrolls.pipelines import integer_values, run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("pipeline", choices=["build", "thm31", "table", "cremona"])
    ap.add_argument("--variety", default="bordiga")
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    args = ap.parse_args()
    variety = "" if args.pipeline == "cremona" else args.variety
    cfg = RunConfig(pipeline=args.pipeline, variety=variety, prime=args.prime)
    a = run(cfg)
    b = run(cfg.with_prime(cfg.other_prime()))
    va, vb = integer_values(a), integer_values(b)
    for k in sorted(set(va) & set(vb)):
        mark = "" if va[k] == vb[k] else "  <-- differs"
        print(f"{k:36} {str(va[k]):>24} {str(vb[k]):>24}{mark}")


if __name__ == "__main__":
    main()
