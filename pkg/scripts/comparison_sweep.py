#!/usr/bin/env python3
"""Sweep both approximations against f_n(1/y) across decades of n.

Prints one table per y: the two ratios, the root gap, and the theta
factor.  Ratios use the evaluated log f_n, so keep --n-to within what
the truncated k-sum handles comfortably (10^7 is seconds).

    python3 scripts/comparison_sweep.py
    python3 scripts/comparison_sweep.py --y 3/2 4 --n-to 100000
"""

import argparse
from fractions import Fraction

from mpmath import mp

from lacunary_asym import PrecisionContext, approx_theorem


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--y", nargs="+", default=["3/2", "2", "4"])
    ap.add_argument("--n-from", type=int, default=10)
    ap.add_argument("--n-to", type=int, default=10**6)
    ap.add_argument("--bits", type=int, default=128)
    args = ap.parse_args()

    ctx = PrecisionContext(bits=args.bits)
    for ytext in args.y:
        y = Fraction(ytext)
        print(f"\ny = {ytext}")
        print(f"{'n':>10}  {'ratio_bdm':>14}  {'ratio_thm':>14}  "
              f"{'theta_factor':>14}  {'rho':>12}")
        n = args.n_from
        while n <= args.n_to:
            rec = approx_theorem(n, y, ctx)
            with ctx.prec():
                print(f"{n:>10}  {mp.nstr(rec.ratio_bdm, 10):>14}  "
                      f"{mp.nstr(rec.ratio_thm, 10):>14}  "
                      f"{mp.nstr(rec.theta_factor, 10):>14}  "
                      f"{mp.nstr(rec.rho, 4):>12}")
            n *= 10


if __name__ == "__main__":
    main()
