"""End-to-end acceptance checks, one test per criterion."""

import random
import time
from fractions import Fraction

import pytest

from detmoments import closedform as cf
from detmoments.algebra import factorial
from detmoments.cli import exp_f4_fixture, exp_f4np_fixture
from detmoments.combinatorics import egf_check, f4_sym_via_tables
from detmoments.genfunc import (
    build_F4,
    build_F4_gram,
    build_F4_sym_gram,
    extract_gram_moment,
    extract_square_moment,
    m4_shift,
)
from detmoments.moments import MomentVector, normal_moments, preset
from detmoments.montecarlo import estimate_moment
from detmoments.oracle import (
    DiscreteDistribution,
    RationalMatrix,
    brute_force_moment,
    check_cauchy_binet,
    check_matrix_det_lemma,
    check_rank_one_shift,
)
from detmoments.recurrences import GramRecState, f4_square_via_summands

EXP1 = cf.EXP1
EXP_SQUARE = exp_f4_fixture()
EXP_GRAM = exp_f4np_fixture()

GENERIC = [
    EXP1.truncated(4),
    MomentVector.of(Fraction(1, 2), 1, Fraction(3, 4), 2),
    MomentVector.of(-1, 3, -2, 11),
    MomentVector.of(2, 5, Fraction(7, 3), 40),
    normal_moments(Fraction(1, 3), 2, order=4),
    preset("discrete", 0, Fraction(2, 3), 3, Fraction(1, 3)).moments.truncated(4),
]
SYMMETRIC = [
    MomentVector.of(0, 1, 0, 3),
    MomentVector.of(0, 1, 0, 1),
    MomentVector.of(0, Fraction(2, 3), 0, Fraction(5, 7)),
    MomentVector.of(0, 2, 0, 9),
    MomentVector.of(0, 4, 0, -16),
]


def test_criterion_01_table1(record_property):
    record_property("criterion", "1. Exp(1) square table via closed form, series and summand recurrences (< 1 s)")
    start = time.perf_counter()
    series = build_F4(EXP1, 10)
    for n, want in EXP_SQUARE.items():
        assert cf.f4_square(n, EXP1) == want
        assert extract_square_moment(series, n) == want
        assert f4_square_via_summands(n, EXP1) == want
    assert time.perf_counter() - start < 1.0


def test_criterion_02_table2(record_property):
    record_property("criterion", "2. Exp(1) Gram table (48 entries) via closed form, bivariate series and recurrence engine")
    series = build_F4_gram(EXP1, 6, 7)
    rec = GramRecState(EXP1)
    assert len(EXP_GRAM) == 48
    for (n, p), want in EXP_GRAM.items():
        assert cf.f4_gram(n, p, EXP1) == want
        assert extract_gram_moment(series, n, p) == want
        if p < n:
            assert rec.get("f4", n, p) == want


def test_criterion_03_diagonal_and_reductions(record_property):
    record_property("criterion", "3. diagonal, symmetric-reduction and mean-shift identities")
    for m in GENERIC:
        for n in range(13):
            assert cf.f4_gram(n, n, m) == cf.f4_square(n, m)
    for m in SYMMETRIC:
        for n in range(13):
            assert cf.f4_square(n, m) == cf.f4_sym_square(n, m)
        assert build_F4_gram(m, 12, 12) == build_F4_sym_gram(m, 12, 12)
    shifted, base = MomentVector.of(1, 2, 4, 8), MomentVector.of(0, 1, 0, 1)
    for n in range(16):
        assert cf.f4_square(n, shifted) == cf.f4_sym_square(n + 1, base)


def test_criterion_04_oracle(record_property):
    record_property("criterion", "4. brute-force oracle equals every applicable closed form (< 10 s)")
    start = time.perf_counter()
    dists = [
        DiscreteDistribution.of([(-1, Fraction(1, 2)), (1, Fraction(1, 2))]),
        DiscreteDistribution.of([(0, Fraction(1, 2)), (2, Fraction(1, 2))]),
        DiscreteDistribution.of([(0, Fraction(2, 3)), (3, Fraction(1, 3))]),
    ]
    for d in dists:
        m = d.moments()
        for n in range(4):
            assert brute_force_moment(d, n, n, 4) == cf.f4_square(n, m)
            assert brute_force_moment(d, n, n, 2) == cf.f2_square(n, m)
        for n in range(5):
            for p in range(4):
                assert brute_force_moment(d, n, p, 4) == cf.f4_gram(n, p, m)
                assert brute_force_moment(d, n, p, 2) == cf.f2_gram(n, p, m)
    rademacher = dists[0]
    skew = DiscreteDistribution.of([(-1, Fraction(2, 3)), (2, Fraction(1, 3))])
    for n in range(4):
        assert brute_force_moment(rademacher, n, n, 6) == cf.f6_sym_square(n, rademacher.moments())
        assert brute_force_moment(skew, n, n, 6) == cf.f6_cen_square(n, skew.moments())
    assert time.perf_counter() - start < 10.0


def test_criterion_05_gaussian(record_property):
    record_property("criterion", "5. Gaussian coherence with the polynomial, Gram and Wishart forms")
    for mu, s2 in [(0, 1), (Fraction(1, 2), 2), (-3, Fraction(1, 5)), (Fraction(2, 7), Fraction(9, 4))]:
        m = normal_moments(mu, s2, order=4)
        for n in range(21):
            sq = cf.f4_square(n, m)
            assert sq == cf.gaussian_f4_square(n, mu, s2)
            assert sq == cf.wishart_moment(2, n, n, mu, s2)
            for p in range(1, n + 1):
                g = cf.f4_gram(n, p, m)
                assert g == cf.gaussian_f4_gram(n, p, mu, s2)
                assert g == cf.wishart_moment(2, n, p, mu, s2)
    for order in (1, 2, 3):
        for n in range(13):
            assert cf.wishart_moment(order, n, n, 0, 1) == cf.gaussian_even_moment(order, n)


def _rand(rng, n, p):
    return [[Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(p)] for _ in range(n)]


def test_criterion_06_lemmas(record_property):
    record_property("criterion", "6. determinant lemma, Cauchy-Binet and rank-one shift on random rational matrices")
    rng = random.Random(2024)
    singular_seen = 0
    for trial in range(120):
        n = 1 + trial % 5
        rows = _rand(rng, n, n)
        if trial % 3 == 0 and n >= 2:
            rows[-1] = [x + y for x, y in zip(rows[0], rows[1])]
            singular_seen += 1
        c = RationalMatrix.from_rows(rows)
        u = [Fraction(rng.randint(-5, 5), 3) for _ in range(n)]
        v = [Fraction(rng.randint(-5, 5), 2) for _ in range(n)]
        assert check_matrix_det_lemma(c, u, v, Fraction(rng.randint(-4, 4), 3)).holds
        p = rng.randint(0, 5)
        left = RationalMatrix.from_rows(_rand(rng, n, p), cols=p)
        right = RationalMatrix.from_rows(_rand(rng, n, p), cols=p)
        assert check_cauchy_binet(left, right).holds
    assert singular_seen >= 30
    for _ in range(100):
        b = RationalMatrix.from_rows(_rand(rng, 4, 4))
        assert check_rank_one_shift(b, Fraction(rng.randint(-5, 5), rng.randint(1, 3))).holds


def test_criterion_07_derangements(record_property):
    record_property("criterion", "7. derangement EGF (u = 1, 2, 3; j <= 9) and permutation-table formula (n <= 8)")
    for u in (1, 2, 3):
        assert egf_check(9, u).holds
    for m in SYMMETRIC[:3]:
        for n in range(9):
            assert f4_sym_via_tables(n, m) == cf.f4_sym_square(n, m)


def test_criterion_08_m4_shift(record_property):
    record_property("criterion", "8. raising m4 by one multiplies the F4 series by e^t (order 16)")
    for m in GENERIC[:4]:
        assert m4_shift(m, 16).holds


def test_criterion_09_asymptotic(record_property):
    record_property("criterion", "9. asymptotic relative deviation strictly decreasing (200-digit e^6)")
    bounds = [cf.asymptotic_relative_deviation(n, digits=200) for n in (10, 15, 20, 25, 30)]
    for (lo_a, hi_a), (lo_b, hi_b) in zip(bounds, bounds[1:]):
        assert hi_b < lo_a


def test_criterion_10_simplex(record_property):
    record_property("criterion", "10. simplex volume moments from the Exp(1) square table")
    assert cf.simplex_volume_moment(1, 2) == Fraction(1, 15)
    for d in range(1, 7):
        want = (factorial(d) / factorial(d + 4)) ** (d + 1) * EXP_SQUARE[d + 1]
        assert cf.simplex_volume_moment(d, 2) == want


MC_SAMPLES = 10**6
MC_SEED = 42


def _within(dist, n, k, exact):
    """5-SE test with the single permitted retry on a fresh seed."""
    est = estimate_moment(dist, n, n, k, MC_SAMPLES, MC_SEED, 1)
    if abs(est.z_score(exact)) <= 5:
        return True
    return abs(estimate_moment(dist, n, n, k, MC_SAMPLES, MC_SEED + 1, 1).z_score(exact)) <= 5


def test_criterion_11_monte_carlo(record_property):
    record_property("criterion", "11. Monte Carlo within 5 SE of exact; identical across 1, 2, 8 workers")
    exp1 = preset("exp1")
    assert _within(exp1, 3, 2, 24)
    assert _within(exp1, 2, 4, 960)
    for n, k in ((3, 2), (2, 4)):
        runs = {estimate_moment(exp1, n, n, k, MC_SAMPLES, MC_SEED, w) for w in (1, 2, 8)}
        assert len({(r.mean, r.standard_error) for r in runs}) == 1
