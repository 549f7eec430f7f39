"""Verification suites run by ``detmoments verify``.

Each suite returns a list of ``Check`` records; nothing here raises on a
failed comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import closedform as cf
from .algebra import format_rational
from .combinatorics import egf_check, f4_sym_via_tables
from .genfunc import (
    build_F4,
    build_F4_gram,
    build_F4_sym_gram,
    extract_gram_moment,
    extract_square_moment,
    m4_shift,
)
from .moments import MomentVector, normal_moments, preset
from .oracle import BudgetExceededError, DiscreteDistribution, brute_force_moment
from .recurrences import GramRecState, f4_square_via_summands

SUITES = ("identities", "oracle", "egf", "mc")

GENERIC_VECTORS = (
    cf.EXP1.truncated(4),
    MomentVector.of(Fraction(1, 2), 1, Fraction(3, 4), 2),
    MomentVector.of(-1, 3, -2, 11),
    MomentVector.of(2, 5, Fraction(7, 3), 40),
    normal_moments(Fraction(1, 3), 2, order=4),
    preset("discrete", 0, Fraction(2, 3), 3, Fraction(1, 3)).moments.truncated(4),
)

SYMMETRIC_VECTORS = (
    MomentVector.of(0, 1, 0, 3),
    MomentVector.of(0, 1, 0, 1),
    MomentVector.of(0, Fraction(2, 3), 0, Fraction(5, 7)),
    MomentVector.of(0, 2, 0, 9),
    MomentVector.of(0, 4, 0, 16),
)

GAUSSIAN_PAIRS = ((0, 1), (Fraction(1, 2), 2), (-3, Fraction(1, 5)), (Fraction(2, 7), Fraction(9, 4)))

ORACLE_DISTS = (
    ("rademacher", preset("rademacher")),
    ("zero-two", preset("zero-two")),
    ("zero-three", preset("discrete", 0, Fraction(2, 3), 3, Fraction(1, 3))),
)

SIXTH_DISTS = (
    ("rademacher", preset("rademacher")),
    ("skew-centered", preset("discrete", -1, Fraction(2, 3), 2, Fraction(1, 3))),
)


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"suite": self.suite, "check": self.name, "pass": self.passed, "detail": self.detail}


def _first_mismatch(pairs: list[tuple[str, Fraction, Fraction]]) -> str:
    for label, a, b in pairs:
        if a != b:
            return f"{label}: {format_rational(a)} != {format_rational(b)}"
    return ""


def _check(suite: str, name: str, pairs: list[tuple[str, Fraction, Fraction]]) -> Check:
    bad = _first_mismatch(pairs)
    return Check(suite, name, not bad, bad or f"{len(pairs)} comparisons")


def square_paths(m: MomentVector, max_n: int) -> list[tuple[str, Fraction, Fraction]]:
    series = build_F4(m, max_n)
    out = []
    for n in range(max_n + 1):
        closed = cf.f4_square(n, m)
        out.append((f"series n={n}", closed, extract_square_moment(series, n)))
        out.append((f"summands n={n}", closed, f4_square_via_summands(n, m)))
        out.append((f"diagonal n={n}", closed, cf.f4_gram(n, n, m)))
    return out


def gram_paths(m: MomentVector, max_n: int) -> list[tuple[str, Fraction, Fraction]]:
    series = build_F4_gram(m, max_n, max_n)
    rec = GramRecState(m)
    out = []
    for n in range(max_n + 1):
        for p in range(n + 1):
            closed = cf.f4_gram(n, p, m)
            out.append((f"series n={n} p={p}", closed, extract_gram_moment(series, n, p)))
            if p < n:
                out.append((f"recurrence n={n} p={p}", closed, rec.get("f4", n, p)))
    return out


def symmetric_reductions(m: MomentVector, max_n: int) -> list[tuple[str, Fraction, Fraction]]:
    out = [(f"square n={n}", cf.f4_sym_square(n, m), cf.f4_square(n, m)) for n in range(max_n + 1)]
    full = build_F4_gram(m, max_n, max_n)
    sym = build_F4_sym_gram(m, max_n, max_n)
    out += [(f"series [t^{i} w^{j}]", sym[i, j], c) for i, j, c in full.items()]
    return out


def shift_pairs(max_n: int) -> list[tuple[str, Fraction, Fraction]]:
    a = MomentVector.of(1, 2, 4, 8)
    b = MomentVector.of(0, 1, 0, 1)
    return [(f"n={n}", cf.f4_square(n, a), cf.f4_sym_square(n + 1, b)) for n in range(max_n + 1)]


def gaussian_pairs(max_n: int) -> list[tuple[str, Fraction, Fraction]]:
    out = []
    for mu, s2 in GAUSSIAN_PAIRS:
        m = normal_moments(mu, s2, order=4)
        tag = f"mu={format_rational(mu)} s2={format_rational(s2)}"
        for n in range(max_n + 1):
            out.append((f"{tag} square n={n}", cf.f4_square(n, m), cf.gaussian_f4_square(n, mu, s2)))
            for p in range(1, n + 1):
                g = cf.f4_gram(n, p, m)
                out.append((f"{tag} gram n={n} p={p}", g, cf.gaussian_f4_gram(n, p, mu, s2)))
                out.append((f"{tag} wishart n={n} p={p}", g, cf.wishart_moment(2, n, p, mu, s2)))
    for order in (1, 2, 3):
        for n in range(max_n + 1):
            out.append((f"central order={order} n={n}", cf.gaussian_even_moment(order, n), cf.wishart_moment(order, n, n, 0, 1)))
    return out


def run_identities(max_n: int = 8) -> list[Check]:
    s = "identities"
    checks = []
    for m in GENERIC_VECTORS:
        checks.append(_check(s, f"square-paths[{m}]", square_paths(m, max_n)))
        checks.append(_check(s, f"gram-paths[{m}]", gram_paths(m, min(max_n, 6))))
        rep = m4_shift(m, 16)
        checks.append(Check(s, f"m4-shift[{m}]", rep.holds, "" if rep.holds else f"first mismatch at t^{rep.first_mismatch}"))
    for m in SYMMETRIC_VECTORS:
        checks.append(_check(s, f"symmetric-reduction[{m}]", symmetric_reductions(m, max_n)))
    checks.append(_check(s, "mean-shift (1,2,4,8) vs (0,1,0,1)", shift_pairs(max(max_n, 15))))
    checks.append(_check(s, "gaussian-coherence", gaussian_pairs(max_n)))
    return checks


def oracle_pairs(dist, max_n: int, budget: int | None) -> list[tuple[str, Fraction, Fraction]]:
    d = DiscreteDistribution.from_preset(dist)
    m = dist.moments
    out = []
    for n in range(max_n + 1):
        out.append((f"k=2 n={n}", brute_force_moment(d, n, n, 2, budget=budget), cf.f2_square(n, m)))
        out.append((f"k=4 n={n}", brute_force_moment(d, n, n, 4, budget=budget), cf.f4_square(n, m)))
    for n in range(max_n + 2):
        for p in range(max_n + 1):
            out.append((f"k=2 n={n} p={p}", brute_force_moment(d, n, p, 2, budget=budget), cf.f2_gram(n, p, m)))
            out.append((f"k=4 n={n} p={p}", brute_force_moment(d, n, p, 4, budget=budget), cf.f4_gram(n, p, m)))
    return out


def sixth_pairs(dist, max_n: int, budget: int | None) -> list[tuple[str, Fraction, Fraction]]:
    d = DiscreteDistribution.from_preset(dist)
    m = dist.moments
    formula = cf.f6_sym_square if m.is_symmetric() else cf.f6_cen_square
    return [(f"k=6 n={n}", brute_force_moment(d, n, n, 6, budget=budget), formula(n, m)) for n in range(max_n + 1)]


def _guarded(suite: str, name: str, build: Callable[[], list]) -> Check:
    try:
        return _check(suite, name, build())
    except BudgetExceededError as exc:
        return Check(suite, name, False, str(exc))


def run_oracle(max_n: int = 3, budget: int | None = None) -> list[Check]:
    s = "oracle"
    checks = [_guarded(s, f"closed-forms[{label}]", lambda d=d: oracle_pairs(d, max_n, budget)) for label, d in ORACLE_DISTS]
    checks += [_guarded(s, f"sixth[{label}]", lambda d=d: sixth_pairs(d, max_n, budget)) for label, d in SIXTH_DISTS]
    return checks


def run_egf(j_max: int = 9, max_n: int = 8) -> list[Check]:
    s = "egf"
    checks = []
    for u in (1, 2, 3):
        rep = egf_check(j_max, u)
        bad = [j for j, a, b in rep.rows if a != b]
        checks.append(Check(s, f"derangement-egf u={u}", rep.holds, f"mismatch at j={bad[0]}" if bad else f"j<={j_max}"))
    for m in SYMMETRIC_VECTORS:
        pairs = [(f"n={n}", f4_sym_via_tables(n, m), cf.f4_sym_square(n, m)) for n in range(max_n + 1)]
        checks.append(_check(s, f"permutation-tables[{m}]", pairs))
    return checks


MC_TARGETS = ((2, 3, 24), (4, 2, 960))
MC_Z_LIMIT = 5.0


def run_mc(samples: int = 10**6, seed: int = 42, workers: int = 1) -> list[Check]:
    """Exp(1) targets; a target failing the 5-SE test is retried once with seed + 1."""
    from .montecarlo import estimate_moment

    dist = preset("exp1")
    checks = []
    for k, n, exact in MC_TARGETS:
        est = estimate_moment(dist, n, n, k, samples, seed, workers)
        z = est.z_score(exact)
        note = ""
        if abs(z) > MC_Z_LIMIT:
            est = estimate_moment(dist, n, n, k, samples, seed + 1, workers)
            z, note = est.z_score(exact), f" (retry, seed {seed + 1})"
        detail = f"mean={est.mean:.6g} se={est.standard_error:.3g} z={z:.3f}{note}"
        checks.append(Check("mc", f"exp1 k={k} n={n}", abs(z) <= MC_Z_LIMIT, detail))
    return checks


def run_suite(suite: str, *, max_n: int | None = None, budget: int | None = None, seed: int = 42, samples: int = 10**6, workers: int = 1) -> list[Check]:
    if suite == "all":
        out: list[Check] = []
        for s in SUITES:
            out += run_suite(s, max_n=max_n, budget=budget, seed=seed, samples=samples, workers=workers)
        return out
    if suite == "identities":
        return run_identities(8 if max_n is None else max_n)
    if suite == "oracle":
        return run_oracle(3 if max_n is None else max_n, budget)
    if suite == "egf":
        return run_egf(max_n=8 if max_n is None else max_n)
    if suite == "mc":
        return run_mc(samples, seed, workers)
    raise ValueError(f"unknown suite {suite!r}")
