"""Maximal and squarefree-discriminant fractions for cubics over a range of heights.

    python3 scripts/density_table.py --H 4 6 8 10 12 --out densities.csv
"""

import argparse
import csv
import sys
import time
from math import pi

from discsieve.census import HeightBox, Predicates, enumerate_box
from discsieve.densities import euler_product_lambda


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--H", nargs="+", default=["4", "6", "8", "10"])
    ap.add_argument("--P", type=int, default=50, help="prime cutoff for the Euler product")
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    lam = float(euler_product_lambda(args.n, args.P).product)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(["n", "H", "total", "zero_disc", "maximal", "squarefree", "maximal_frac", "squarefree_frac", "six_over_pi2", "euler_product", "seconds"])
    for H in args.H:
        t0 = time.time()
        rep = enumerate_box(HeightBox(args.n, H), Predicates(squarefree=True, maximal=True), workers=args.workers)
        c = rep.counts
        w.writerow([
            args.n, H, rep.total, rep.zero_disc, c["maximal"], c["squarefree"],
            f"{c['maximal'] / rep.total:.6f}", f"{c['squarefree'] / rep.total:.6f}",
            f"{6 / pi**2:.6f}", f"{lam:.6f}", f"{time.time() - t0:.1f}",
        ])
        fh.flush()
        print(f"H={H} done", file=sys.stderr)


if __name__ == "__main__":
    main()
