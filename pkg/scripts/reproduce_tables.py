"""Print the Exp(1) fourth-moment tables and compare them with the stored values."""

import argparse
import sys

from detmoments import closedform as cf
from detmoments.cli import exp_f4_fixture, exp_f4np_fixture


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--max-p", type=int, default=6)
    ap.add_argument("--max-d", type=int, default=7, help="largest n - p")
    args = ap.parse_args()

    square, gram = exp_f4_fixture(), exp_f4np_fixture()
    bad = 0
    print("square  E|A|^4")
    for n in range(1, args.max_n + 1):
        v = cf.f4_square(n, cf.EXP1)
        mark = "" if n not in square else ("ok" if square[n] == v else "MISMATCH")
        bad += mark == "MISMATCH"
        print(f"{n:>3}  {v}  {mark}")
    print("\ngram  E|U^T U|^2, rows p, columns n - p")
    for p in range(1, args.max_p + 1):
        row = []
        for d in range(args.max_d + 1):
            v = cf.f4_gram(p + d, p, cf.EXP1)
            if (p + d, p) in gram and gram[p + d, p] != v:
                bad += 1
            row.append(str(v))
        print(f"p={p}: " + "  ".join(row))
    print(f"\n{bad} mismatches against stored values")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
