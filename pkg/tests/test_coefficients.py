from fractions import Fraction

import pytest
from hypothesis import given

from detmoments.coefficients import (
    square_taylor_coeffs,
    gram_mixed_taylor_coeffs,
    gram_taylor_coeffs,
    square_numerator_coeffs,
    gram_numerator_coeffs,
)
from detmoments.moments import CentralMoments, central_from_raw, preset

from conftest import moment_vectors

EXP1 = preset("exp1").moments
EXP1_CENTRAL = central_from_raw(EXP1)


def test_exp1_q_values():
    q = square_taylor_coeffs(EXP1[1], EXP1_CENTRAL)
    assert [q[i] for i in range(-2, 5)] == [16, -96, 192, -124, -26, 27, 12]


def test_exp1_q_tilde_values():
    qt = gram_taylor_coeffs(EXP1[1], EXP1_CENTRAL)
    qtt = gram_mixed_taylor_coeffs(EXP1[1], EXP1_CENTRAL)
    assert [qt[i] for i in range(4)] == [-8, 30, -39, 17]
    assert [qtt[i] for i in (2, 3, 4)] == [1, -2, 1]
    assert qt[-2] == qt[-1] == qt[4] == 0
    assert all(qtt[i] == 0 for i in (-2, -1, 0, 1))


def test_zero_two_numerator():
    m = preset("zero-two").moments
    assert square_numerator_coeffs(m[1], central_from_raw(m)) == (5, 2, 4, 0, 0, 0)


@given(moment_vectors())
def test_centered_numerator_collapses(m):
    # with m1 = 0 the numerator is (1 - mu2^2 t)^2
    c = central_from_raw(m)
    p = square_numerator_coeffs(Fraction(0), c)
    assert p == (-2 * c.mu2**2, c.mu2**4, 0, 0, 0, 0)
    pt = gram_numerator_coeffs(Fraction(0), c)
    assert pt == (2 * c.mu2, -2 * c.mu2**3, 0, 0)


@given(moment_vectors())
def test_centered_q_is_nrr(m):
    q = square_taylor_coeffs(Fraction(0), central_from_raw(m))
    assert q == {-2: 0, -1: 0, 0: 0, 1: 0, 2: 1, 3: 0, 4: 0}


def test_q_needs_nonzero_variance():
    with pytest.raises(ZeroDivisionError):
        square_taylor_coeffs(Fraction(1), CentralMoments(Fraction(0), Fraction(1), Fraction(1)))


def test_literal_q_minus_two_reading_requires_m3():
    with pytest.raises(ValueError):
        square_taylor_coeffs(EXP1[1], EXP1_CENTRAL, qm2_uses_raw_m3=True)
