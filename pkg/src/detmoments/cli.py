"""Command-line front end.

    detmoments moment --k 4 --n 3 --dist exp1
    detmoments moment --k 4 --n 5 --p 3 --dist exp1 --all-methods
    detmoments series --which F4gram --order 6 --order-w 4 --dist exp1
    detmoments table exp-f4np --check --format csv
    detmoments verify --suite oracle --max-n 3 --budget 1000000
    detmoments simplex --d 1 --l 2
    detmoments mc --k 4 --n 2 --dist exp1 --samples 1000000 --seed 42 --workers 4

Exit codes: 0 ok, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import closedform as cf
from .algebra import format_rational
from .combinatorics import MAX_ENUMERATION, f4_sym_via_tables
from .genfunc import KINDS, GenFunSpec, build_F4, build_F4_gram, extract_gram_moment, extract_square_moment
from .moments import DistributionPreset, MomentError, MomentVector, parse_dist, parse_moments
from .oracle import BudgetExceededError, DiscreteDistribution, brute_force_moment
from .recurrences import GramRecState, f4_square_via_summands

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
METHODS = ("closed", "series", "recurrence", "tables", "oracle")

# Exp(1) fourth moments as printed in the source tables.
EXP_F4_FIXTURE = """
1 24
2 960
3 51840
4 3511872
5 287953920
6 27988001280
7 3181325414400
8 418846663065600
9 63399549828464640
10 10964925305310412800
"""

# rows: n - p = 0..7; columns: p = 1..6
EXP_F4NP_FIXTURE = """
24 960 51840 3511872 287953920 27988001280
56 3744 297216 27708480 3004024320 375698373120
96 9432 1022400 124675200 17182609920 2675406827520
144 19320 2724480 419207040 71341240320 13491506810880
200 34920 6189120 1169602560 240336875520 54144163584000
264 57960 12579840 2858913792 696776048640 184099283343360
336 90384 23538816 6325119360 1801876285440 551197391754240
416 134352 41299200 12939696000 4256462960640 1491202996208640
"""


def exp_f4_fixture() -> dict[int, int]:
    return {int(a): int(b) for a, b in (line.split() for line in EXP_F4_FIXTURE.split("\n") if line.strip())}


def exp_f4np_fixture() -> dict[tuple[int, int], int]:
    """(n, p) -> f4(n, p)."""
    rows = [line.split() for line in EXP_F4NP_FIXTURE.split("\n") if line.strip()]
    return {(d + p, p): int(v) for d, row in enumerate(rows) for p, v in enumerate(row, start=1)}


class UsageError(Exception):
    pass


class InapplicableMethod(Exception):
    pass


def _moments_from_args(args) -> tuple[MomentVector, DistributionPreset | None]:
    if args.dist is not None:
        dist = parse_dist(args.dist)
        return dist.moments, dist
    return parse_moments(args.moments), None


# moment ---------------------------------------------------------------------


def _method_value(method: str, k: int, n: int, p: int | None, m: MomentVector, dist, budget) -> Fraction:
    square = p is None or p == n
    if method == "closed":
        return cf.closed_form(cf.MomentQuery(k, n, m, p))
    if method == "oracle":
        if dist is None or dist.atoms is None:
            raise InapplicableMethod("oracle needs a finite discrete --dist")
        return brute_force_moment(DiscreteDistribution.from_preset(dist), n, n if p is None else p, k, budget=budget)
    if k != 4:
        raise InapplicableMethod(f"{method} is only available for k = 4")
    if method == "series":
        if square:
            return extract_square_moment(build_F4(m, max(n, 1)), n)
        if p > n:
            return Fraction(0)
        return extract_gram_moment(build_F4_gram(m, p, n - p), n, p)
    if method == "recurrence":
        if square:
            return f4_square_via_summands(n, m)
        return GramRecState(m).get("f4", n, p)
    if method == "tables":
        if not square or not m.truncated(4).is_symmetric():
            raise InapplicableMethod("tables need a square matrix and m1 = m3 = 0")
        if n > MAX_ENUMERATION:
            raise InapplicableMethod(f"tables enumerate derangements only up to n = {MAX_ENUMERATION}")
        return f4_sym_via_tables(n, m)
    raise UsageError(f"unknown method {method!r}")


def run_moment(args) -> int:
    m, dist = _moments_from_args(args)
    if args.validate_moments:
        m.validate()
    m.require(args.k)
    p = args.p
    if p is not None and p == args.n:
        p = None
    cf.MomentQuery(args.k, args.n, m, p)
    methods = METHODS if args.all_methods else (args.method,)
    values: dict[str, Fraction] = {}
    skipped: dict[str, str] = {}
    for method in methods:
        try:
            values[method] = _method_value(method, args.k, args.n, p, m, dist, args.budget)
        except (InapplicableMethod, MomentError, BudgetExceededError) as exc:
            if not args.all_methods:
                raise UsageError(str(exc)) from exc
            skipped[method] = str(exc)
        except ZeroDivisionError as exc:
            if not args.all_methods:
                raise UsageError(f"{method}: {exc}") from exc
            skipped[method] = str(exc)
    agree = len(set(values.values())) <= 1
    _emit_moment(args, m, p, values, skipped, agree)
    if not agree:
        print("error: methods disagree", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _emit_moment(args, m, p, values, skipped, agree) -> None:
    out = sys.stdout
    if args.format == "json":
        doc = {
            "k": args.k,
            "n": args.n,
            "p": args.n if p is None else p,
            "moments": str(m),
            "values": {k: format_rational(v) for k, v in values.items()},
            "skipped": skipped,
            "agree": agree,
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["method", "k", "n", "p", "value"])
        for method, v in values.items():
            w.writerow([method, args.k, args.n, args.n if p is None else p, format_rational(v)])
    else:
        width = max(len(k) for k in values) if values else 0
        for method, v in values.items():
            out.write(f"{method:<{width}}  {format_rational(v)}\n")
        for method, why in skipped.items():
            out.write(f"# {method} skipped: {why}\n")


# series ---------------------------------------------------------------------


def run_series(args) -> int:
    m, _ = _moments_from_args(args)
    bivariate = args.which in ("F4gram", "F4symgram")
    orders = (args.order, args.order if args.order_w is None else args.order_w) if bivariate else (args.order,)
    series = GenFunSpec(args.which, m, orders).build()
    if bivariate:
        coeffs = [[i, j, format_rational(c)] for i, j, c in series.items()]
    else:
        coeffs = [[i, 0, format_rational(series[i])] for i in range(series.order + 1)]
    if args.format == "json":
        json.dump({"which": args.which, "orders": list(orders), "coefficients": coeffs}, sys.stdout)
        sys.stdout.write("\n")
    else:
        for i, j, c in coeffs:
            sys.stdout.write(f"{i} {j} {c}\n")
    return EXIT_OK


# table ----------------------------------------------------------------------


def _write_table(fmt: str, header: list[str], rows: list[list[str]], key: str) -> None:
    out = sys.stdout
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    elif fmt == "json":
        json.dump({"table": key, "columns": header, "rows": rows}, out, indent=2)
        out.write("\n")
    else:
        widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
        out.write("  ".join(h.rjust(w) for h, w in zip(header, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n")


def run_table(args) -> int:
    m = cf.EXP1
    mismatches = []
    if args.which == "exp-f4":
        max_n = 10 if args.max_n is None else args.max_n
        fixture = exp_f4_fixture()
        header = ["n", "f4"]
        rows = []
        for n in range(1, max_n + 1):
            v = cf.f4_square(n, m)
            rows.append([str(n), format_rational(v)])
            if n in fixture and fixture[n] != v:
                mismatches.append(f"n={n}: {format_rational(v)} != {fixture[n]}")
    else:
        max_p = 6 if args.max_n is None else args.max_n
        fixture = exp_f4np_fixture()
        header = ["n-p"] + [f"p={p}" for p in range(1, max_p + 1)]
        rows = []
        if max_p > 0:
            for d in range(args.max_d + 1):
                row = [str(d)]
                for p in range(1, max_p + 1):
                    v = cf.f4_gram(p + d, p, m)
                    row.append(format_rational(v))
                    want = fixture.get((p + d, p))
                    if want is not None and want != v:
                        mismatches.append(f"n={p + d} p={p}: {format_rational(v)} != {want}")
                rows.append(row)
    _write_table(args.format, header, rows, args.which)
    if args.check:
        for line in mismatches:
            print(f"mismatch {line}", file=sys.stderr)
        print(f"check: {'FAIL' if mismatches else 'PASS'}", file=sys.stderr)
        return EXIT_FAIL if mismatches else EXIT_OK
    return EXIT_OK


# verify ---------------------------------------------------------------------


def run_verify(args) -> int:
    from .verify import run_suite

    checks = run_suite(
        args.suite, max_n=args.max_n, budget=args.budget, seed=args.seed, samples=args.samples, workers=args.workers
    )
    if args.format == "json":
        json.dump([c.as_dict() for c in checks], sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for c in checks:
            sys.stdout.write(f"{'PASS' if c.passed else 'FAIL'}  {c.suite:<10}  {c.name}  {c.detail}\n")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


# simplex / mc ---------------------------------------------------------------


def run_simplex(args) -> int:
    v = cf.simplex_volume_moment(args.d, args.l)
    if args.format == "json":
        json.dump({"d": args.d, "l": args.l, "value": format_rational(v)}, sys.stdout)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(format_rational(v) + "\n")
    return EXIT_OK


def run_mc(args) -> int:
    from .montecarlo import estimate_moment

    dist = parse_dist(args.dist)
    p = args.n if args.p is None else args.p
    est = estimate_moment(dist, args.n, p, args.k, args.samples, args.seed, args.workers)
    exact = None
    try:
        exact = cf.closed_form(cf.MomentQuery(args.k, args.n, dist.moments, None if p == args.n else p))
    except (MomentError, ValueError):
        pass
    doc = {
        "mean": est.mean,
        "se": est.standard_error,
        "samples": est.samples,
        "seed": est.seed,
        "exact": None if exact is None else format_rational(exact),
        "z_score": None if exact is None else est.z_score(float(exact)),
    }
    json.dump(doc, sys.stdout)
    sys.stdout.write("\n")
    return EXIT_OK


# parser ---------------------------------------------------------------------


def _add_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--dist", help="exp1 | normal:mu:sigma2 | rademacher | zero-two | discrete:v:p,...")
    g.add_argument("--moments", help="raw moments, e.g. m1=1,m2=2,m3=6,m4=24")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="detmoments", description="Exact moments of random determinants.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moment", help="E|A|^k or E|U^T U|^(k/2)")
    p.add_argument("--k", type=int, required=True, choices=(2, 4, 6))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=None, help="columns of U; omit for a square matrix")
    _add_source(p)
    p.add_argument("--method", choices=METHODS, default="closed")
    p.add_argument("--all-methods", action="store_true", help="run every applicable method and require agreement")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--validate-moments", action="store_true", help="reject moment vectors with m2 < m1^2")
    p.add_argument("--budget", type=int, default=None, help="enumeration budget for --method oracle")
    p.set_defaults(func=run_moment)

    p = sub.add_parser("series", help="truncated generating-function coefficients")
    p.add_argument("--which", choices=KINDS, required=True)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--order-w", type=int, default=None)
    _add_source(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=run_series)

    p = sub.add_parser("table", help="Exp(1) fourth-moment tables")
    p.add_argument("which", choices=("exp-f4", "exp-f4np"))
    p.add_argument("--max-n", type=int, default=None, help="largest n (exp-f4) or p (exp-f4np)")
    p.add_argument("--max-d", type=int, default=7, help="largest n - p for exp-f4np")
    p.add_argument("--check", action="store_true", help="compare against the embedded fixtures")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=run_table)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=("all", "identities", "oracle", "egf", "mc"), default="all")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=run_verify)

    p = sub.add_parser("simplex", help="even volume moments of a random simplex")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, required=True, choices=(1, 2))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=run_simplex)

    p = sub.add_parser("mc", help="Monte Carlo estimate with standard error")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--dist", required=True)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=run_mc)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler: Callable = args.func
    try:
        return handler(args)
    except (UsageError, MomentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
