"""Monte Carlo estimates against exact moments for a preset distribution."""

import argparse

from detmoments import closedform as cf
from detmoments.moments import preset
from detmoments.montecarlo import estimate_moment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dist", default="exp1")
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    dist = preset(args.dist)
    m = dist.moments
    print("k  n  exact  mean  se  z")
    for k, exact_of in ((2, cf.f2_square), (4, cf.f4_square)):
        for n in range(1, args.max_n + 1):
            exact = exact_of(n, m)
            est = estimate_moment(dist, n, n, k, args.samples, args.seed, args.workers)
            print(f"{k}  {n}  {exact}  {est.mean:.6g}  {est.standard_error:.3g}  {est.z_score(float(exact)):+.2f}")


if __name__ == "__main__":
    main()
