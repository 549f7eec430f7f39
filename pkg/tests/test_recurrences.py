from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from detmoments import closedform as cf
from detmoments.algebra import FormalSeries, factorial, series_reciprocal_power
from detmoments.genfunc import build_G4
from detmoments.moments import CentralMoments, MomentError, MomentVector, central_from_raw, preset
from detmoments.recurrences import (
    GramRecState,
    HState,
    RecursionDepthError,
    beta_band,
    delta_diag,
    f4_gram_via_recurrence,
    f4_square_via_summands,
    g4,
    h0,
    h9_h10,
    selection_weight,
)

from conftest import moment_vectors

EXP1 = cf.EXP1
EXP1_C = CentralMoments(1, 2, 9)
U = CentralMoments(Fraction(2, 3), Fraction(-1, 2), Fraction(5, 4))
VECTORS = [
    EXP1.truncated(4),
    MomentVector.of(Fraction(1, 2), 1, Fraction(3, 4), 2),
    MomentVector.of(-1, 3, -2, 11),
    MomentVector.of(2, 5, Fraction(7, 3), 40),
    preset("discrete", 0, Fraction(2, 3), 3, Fraction(1, 3)).moments,
]
ORDER = 12


def test_g4_examples():
    assert g4(1, EXP1_C) == 9
    assert g4(0, EXP1_C) == 1
    s2 = Fraction(3, 2)
    assert g4(2, CentralMoments(s2, 0, 3 * s2**2)) == 24 * s2**4


def test_h0_examples():
    assert h0(0, U) == 0
    assert h0(1, U) == U.mu2
    assert h0(2, U) == U.mu2 * U.mu4 + U.mu2**3


def test_h9_h10_examples():
    assert h9_h10(0, U) == (0, 0)
    assert h9_h10(2, U) == (U.mu2**2, 0)


def _weighted(values, weight):
    return FormalSeries.from_coefficients([weight(n) * values(n) / factorial(n) ** 2 for n in range(ORDER + 1)], ORDER)


@pytest.mark.parametrize("c", [EXP1_C, U, CentralMoments(3, 1, 0)], ids=str)
def test_h_generating_functions(c):
    st_ = HState(c)
    a = c.mu2**2
    G = build_G4(c, ORDER)
    t = FormalSeries.monomial(1, 1, ORDER)
    inv1 = series_reciprocal_power(a, 1, ORDER)
    inv2 = series_reciprocal_power(a, 2, ORDER)
    H0 = _weighted(st_.h0, lambda n: n**2)
    H9 = _weighted(st_.h9, lambda n: n**2 * (n - 1) ** 2)
    H10 = _weighted(st_.h10, lambda n: n**2 * (n - 1) ** 2)
    assert H0 == t * G * inv1 * c.mu2
    assert H9 == t * t * G * inv2 * (FormalSeries.constant(1, ORDER) + t * a) * c.mu2**2
    assert H10 == t * t * t * G * inv2 * c.mu2**4


@pytest.mark.parametrize("m", VECTORS, ids=str)
def test_summands_match_closed_form(m):
    assert all(f4_square_via_summands(n, m) == cf.f4_square(n, m) for n in range(11))


def test_summands_exp1_table():
    want = [24, 960, 51840, 3511872, 287953920, 27988001280, 3181325414400]
    assert [f4_square_via_summands(n, EXP1) for n in range(1, 8)] == want


@given(moment_vectors(), st.integers(0, 8))
def test_summands_centered_is_g4(m, n):
    c = central_from_raw(m)
    assert f4_square_via_summands(n, c.as_raw()) == g4(n, c)


def test_zero_two_via_mean_shift():
    zt = preset("zero-two").moments
    assert f4_square_via_summands(2, zt) == cf.f4_sym_square(3, MomentVector.of(0, 1, 0, 1))


def test_delta_diag():
    m = MomentVector.of(Fraction(3, 2), 4, -1, 9)
    c = central_from_raw(m)
    assert delta_diag(0, m) == 1
    assert delta_diag(1, m) == c.mu4 + 2 * m[1] * c.mu3 + m[1] ** 2 * c.mu2
    centered = c.as_raw()
    assert all(delta_diag(n, centered) == g4(n, c) for n in range(6))


def test_delta_generating_function():
    m = MomentVector.of(Fraction(3, 2), 4, -1, 9)
    c = central_from_raw(m)
    m1, u2, u3 = m[1], c.mu2, c.mu3
    num = FormalSeries.from_coefficients(
        [1, m1**2 * u2 - u2**2 + 2 * m1 * u3, m1**2 * u3**2 - 2 * m1 * u2**2 * u3, -(m1**2) * u2**2 * u3**2], ORDER
    )
    want = num * series_reciprocal_power(u2**2, 1, ORDER) * build_G4(c, ORDER)
    got = _weighted(lambda n: delta_diag(n, m), lambda n: 1)
    assert got == want


def test_beta_band():
    m = MomentVector.of(1, 3, 2, 7)
    c = central_from_raw(m)
    assert beta_band(0, m) == 1
    assert beta_band(1, m) == 2 * (c.mu4 + 3 * c.mu2**2)
    got = FormalSeries.from_coefficients(
        [beta_band(n, m) / (factorial(n + 1) * factorial(n)) for n in range(ORDER + 1)], ORDER
    )
    a = c.mu2**2
    want = FormalSeries.from_coefficients([1, 2 * a], ORDER) * series_reciprocal_power(a, 1, ORDER) * build_G4(c, ORDER)
    assert got == want


def test_selection_weight():
    assert selection_weight(4, 1, 2, 1) == 12
    assert selection_weight(3, 2, -1) == 0


def test_gram_recurrence_examples():
    m = MomentVector.of(3, 5, 7, 11)
    assert f4_gram_via_recurrence(2, 1, m) == 2 * m[2] ** 2 + 2 * m[4]
    assert f4_gram_via_recurrence(3, 2, EXP1) == 3744
    assert f4_gram_via_recurrence(4, 3, EXP1) == 297216
    assert f4_gram_via_recurrence(5, 0, EXP1) == 1
    assert f4_gram_via_recurrence(2, 3, EXP1) == 0


@pytest.mark.parametrize("m", VECTORS[:4], ids=str)
def test_gram_recurrence_matches_closed_form(m):
    state = GramRecState(m)
    for n in range(8):
        for p in range(n):
            assert state.get("f4", n, p) == cf.f4_gram(n, p, m)


def test_intermediate_values():
    m = MomentVector.of(3, 11, 7, 13)
    c = central_from_raw(m)
    state = GramRecState(m)
    assert state.get("alpha", 2, 1) == 2 * (c.mu2 * m[2] + c.mu4 + 2 * m[1] * c.mu3 + m[1] ** 2 * c.mu2)
    assert state.get("gamma", 1, 1) == m[2]
    assert state.get("epsilon", 3, 3) == 0


def test_vanishing_ranges_agree_with_the_relations():
    # Above each threshold every selection weight has a negative factorial,
    # so the raw relation itself must give zero.
    state = GramRecState(MomentVector.of(3, 11, 7, 13))
    for name, offset in state._ZERO_FROM.items():
        if name == "g4":
            continue
        relation = getattr(state, "_" + name)
        for n in range(5):
            for p in range(max(1, n + offset), n + offset + 3):
                assert relation(n, p) == 0, (name, n, p)


def test_zero_variance_rejected():
    with pytest.raises(MomentError):
        GramRecState(MomentVector.of(2, 4, 8, 16))


def test_depth_guard():
    state = GramRecState(EXP1, max_depth=3)
    with pytest.raises(RecursionDepthError):
        state.get("f4", 8, 4)
