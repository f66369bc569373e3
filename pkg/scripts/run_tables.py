"""Print the summary rows of both scrolls side by side."""

import argparse

from scrollmaps.config import DEFAULT_PRIME, RunConfig
from scrollmaps.scrolls.pipelines import run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rows = {}
    for variety in ("bordiga", "palatini"):
        rep = run(RunConfig(pipeline="table", variety=variety, prime=args.prime, seed=args.seed))
        rows[variety] = rep.values.get("table_row", {})
        print(f"{variety}: {'PASS' if rep.ok else 'FAIL'} in {rep.timings['total']:.1f}s")
    keys = list(dict.fromkeys(k for r in rows.values() for k in r))
    print(f"{'':12}" + "".join(f"{v:>10}" for v in rows))
    for k in keys:
        print(f"{k:12}" + "".join(f"{str(rows[v].get(k, '-')):>10}" for v in rows))


if __name__ == "__main__":
    main()
