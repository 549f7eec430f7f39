"""Generating functions of the fourth moments as exact truncated series.

Series store the normalized coefficients: [t^n] F4 = f4(n)/(n!)^2 and
[t^p w^(n-p)] F4(t, w) = (n-p)!/(n! p!) f4(n, p). The extraction helpers
multiply the normalization back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    DEFAULT_BIVARIATE_ORDER,
    DEFAULT_ORDER,
    BivariateSeries,
    FormalSeries,
    factorial,
    linear_exp,
    polynomial,
    series_reciprocal_power,
)
from .coefficients import square_numerator_coeffs, gram_numerator_coeffs
from .moments import CentralMoments, MomentVector, central_from_raw

KINDS = ("F4", "F4sym", "F4gram", "F4symgram", "G4")


def build_G4(c: CentralMoments, order: int = DEFAULT_ORDER) -> FormalSeries:
    """exp(t(mu4 - 3 mu2^2)) / (1 - mu2^2 t)^3: the centered-entry F4."""
    return linear_exp(c.mu4 - 3 * c.mu2**2, order) * series_reciprocal_power(c.mu2**2, 3, order)


def build_F4sym(m: MomentVector, order: int = DEFAULT_ORDER) -> FormalSeries:
    m.require(4)
    return build_G4(CentralMoments(m[2], Fraction(0), m[4]), order)


def build_F4(m: MomentVector, order: int = DEFAULT_ORDER) -> FormalSeries:
    """Generating function of f4(n) for arbitrary entries."""
    m.require(4)
    c = central_from_raw(m)
    numer = polynomial((1,) + square_numerator_coeffs(m[1], c), order)
    return linear_exp(c.mu4 - 3 * c.mu2**2, order) * series_reciprocal_power(c.mu2**2, 5, order) * numer


def _omega_expansion(k: int, a: Fraction, i: int, order: int) -> FormalSeries:
    """[w^i] of 1/(1 - w - a t)^k, as a series in t."""
    return math.comb(i + k - 1, k - 1) * series_reciprocal_power(a, i + k, order)


def build_F4_gram(m: MomentVector, order_t: int | None = None, order_w: int | None = None) -> BivariateSeries:
    """Bivariate generating function of f4(n, p).

    Each w-slice is assembled from 1/(1 - w - mu2^2 t)^k expanded in w, so
    only univariate products are needed.
    """
    m.require(4)
    nt = DEFAULT_BIVARIATE_ORDER[0] if order_t is None else order_t
    nw = DEFAULT_BIVARIATE_ORDER[1] if order_w is None else order_w
    c = central_from_raw(m)
    m1, a = m[1], c.mu2**2
    base = linear_exp(c.mu4 - 3 * a, nt) * series_reciprocal_power(a, 4, nt)
    head = base * polynomial((1,) + square_numerator_coeffs(m1, c), nt)
    mid = base * polynomial((0,) + gram_numerator_coeffs(m1, c), nt) * (m1**2)
    tail = base.shift(2) * (2 * m1**4 * c.mu2**2)
    slices = []
    for j in range(nw + 1):
        s = head * _omega_expansion(1, a, j, nt)
        if j >= 1:
            s = s + mid * _omega_expansion(2, a, j - 1, nt)
        if j >= 2:
            s = s + tail * _omega_expansion(3, a, j - 2, nt)
        slices.append(s)
    return BivariateSeries.from_omega_slices(slices, nt)


def build_F4_sym_gram(m: MomentVector, order_t: int | None = None, order_w: int | None = None) -> BivariateSeries:
    """exp(t(m4 - 3 m2^2)) / ((1 - m2^2 t)^2 (1 - w - m2^2 t))."""
    m.require(4)
    nt = DEFAULT_BIVARIATE_ORDER[0] if order_t is None else order_t
    nw = DEFAULT_BIVARIATE_ORDER[1] if order_w is None else order_w
    a = m[2] ** 2
    base = linear_exp(m[4] - 3 * a, nt) * series_reciprocal_power(a, 2, nt)
    return BivariateSeries.from_omega_slices([base * _omega_expansion(1, a, j, nt) for j in range(nw + 1)], nt)


@dataclass(frozen=True)
class GenFunSpec:
    which: str
    moments: MomentVector
    orders: tuple[int, ...] = (DEFAULT_ORDER,)

    def __post_init__(self):
        if self.which not in KINDS:
            raise ValueError(f"unknown generating function {self.which!r}; expected one of {KINDS}")
        want = 2 if self.which in ("F4gram", "F4symgram") else 1
        if len(self.orders) != want:
            raise ValueError(f"{self.which} needs {want} truncation order(s)")

    def build(self) -> FormalSeries | BivariateSeries:
        if self.which == "F4":
            return build_F4(self.moments, *self.orders)
        if self.which == "F4sym":
            return build_F4sym(self.moments, *self.orders)
        if self.which == "G4":
            return build_G4(central_from_raw(self.moments), *self.orders)
        if self.which == "F4gram":
            return build_F4_gram(self.moments, *self.orders)
        return build_F4_sym_gram(self.moments, *self.orders)


def extract_square_moment(series: FormalSeries, n: int) -> Fraction:
    return factorial(n) ** 2 * series[n]


def extract_gram_moment(series: BivariateSeries, n: int, p: int) -> Fraction:
    if p > n:
        # negative powers of w never occur
        return Fraction(0)
    return series.coefficient(p, n - p) * factorial(n) * factorial(p) / factorial(n - p)


@dataclass(frozen=True)
class ShiftReport:
    order: int
    holds: bool
    first_mismatch: int | None = None


def m4_shift(moments: MomentVector, order: int = 16, builder=build_F4) -> ShiftReport:
    """Check builder(m4 + 1) == exp(t) * builder(m4) coefficientwise.

    This is the finite form of dF/dm4 = t F: raising m4 by one multiplies
    the series by e^t.
    """
    bumped = moments.with_moment(4, moments[4] + 1)
    lhs = builder(bumped, order)
    rhs = linear_exp(1, order) * builder(moments, order)
    for i in range(order + 1):
        if lhs[i] != rhs[i]:
            return ShiftReport(order, False, i)
    return ShiftReport(order, True)
