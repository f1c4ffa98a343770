"""Compare the two W2 exponents in the m = m1 * m2 split over a cubic box.

For every f in the box and every m <= M_max with m^2 | disc f, record
whether m1 * m2^2 >= m / 2 under the stated exponent and under the sharp
one.  Prints a JSON summary with the first few failures of each.
"""

import argparse
import json

from discsieve.census import HeightBox
from discsieve.polyarith import MonicPoly, fiber_discriminant, horner
from discsieve.sieve import decompose


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--H", default="6")
    ap.add_argument("--mmax", type=int, default=60)
    args = ap.parse_args()
    B1, B2, B3 = HeightBox(3, args.H).bounds
    pairs = 0
    fails = {"literal": [], "sharp": []}
    for a1 in range(-B1, B1 + 1):
        for a2 in range(-B2, B2 + 1):
            fd = fiber_discriminant((a1, a2))
            for a3 in range(-B3, B3 + 1):
                d = horner(fd, a3)
                if d == 0:
                    continue
                for m in range(2, args.mmax + 1):
                    if d % (m * m):
                        continue
                    pairs += 1
                    f = MonicPoly((a1, a2, a3))
                    for name, refine in (("literal", False), ("sharp", True)):
                        dec = decompose(f, m, disc=d, refine=refine)
                        if 2 * dec.product < m:
                            fails[name].append((f.coeffs, m, dec.m1, dec.m2))
    print(json.dumps({
        "H": args.H, "mmax": args.mmax, "pairs": pairs,
        "literal_failures": len(fails["literal"]), "sharp_failures": len(fails["sharp"]),
        "literal_examples": fails["literal"][:5], "sharp_examples": fails["sharp"][:5],
    }, indent=1))


if __name__ == "__main__":
    main()
