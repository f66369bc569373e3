"""Count lines over GF(p) on random Pfaffian cubics with two planted skew lines.

Compares the exhaustive count with the common transversals found by solving
the quintic, for a few small primes.
"""

import argparse
import random

from scrollmaps.algebra.field import GF
from scrollmaps.algebra.ring import PolyRing
from scrollmaps.geometry.local import is_smooth
from scrollmaps.ideals.ideal import Ideal
from scrollmaps.scrolls.instances import palatini_matrices, pfaffian_cubic
from scrollmaps.scrolls.palatini import lines_on_surface, rational_transversals


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[7, 11, 13])
    ap.add_argument("--draws", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for p in args.primes:
        fld = GF(p)
        done = 0
        while done < args.draws:
            F = pfaffian_cubic(palatini_matrices(fld, rng, plant_lines=True), PolyRing(4, fld))
            if F.degree() != 3 or not is_smooth(Ideal([F]), [F]):
                continue
            done += 1
            trans = rational_transversals(F, rng)
            print(f"p = {p:2}: {len(lines_on_surface(F)):2} rational lines, "
                  f"{'-' if trans is None else len(trans)} rational transversals")


if __name__ == "__main__":
    main()
