"""Relative deviation between exact Exp(1) fourth moments and the e^6 asymptotic."""

import argparse

from detmoments import closedform as cf


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="+", default=[2, 5, 10, 15, 20, 25, 30])
    ap.add_argument("--digits", type=int, default=200)
    args = ap.parse_args()
    print("n  lower  upper")
    for n in args.ns:
        lo, hi = cf.asymptotic_relative_deviation(n, digits=args.digits)
        print(f"{n:>3}  {lo:.12e}  {hi:.12e}")


if __name__ == "__main__":
    main()
