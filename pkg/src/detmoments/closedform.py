"""Closed-form determinant and Gram-determinant moments, evaluated exactly.

Notation: f_k(n) = E|A|^k for an n x n matrix of i.i.d. entries and
f_k(n, p) = E|U^T U|^(k/2) for an n x p matrix U.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Scalarish, as_scalar, binomial, double_factorial, extended_binomial, factorial
from .coefficients import square_taylor_coeffs, gram_mixed_taylor_coeffs, gram_taylor_coeffs
from .moments import MomentError, MomentVector, central_from_raw, preset


@dataclass(frozen=True)
class MomentQuery:
    k: int
    n: int
    moments: MomentVector
    p: int | None = None

    def __post_init__(self):
        if self.k not in (2, 4, 6):
            raise ValueError(f"k must be 2, 4 or 6, got {self.k}")
        if self.n < 0 or (self.p is not None and self.p < 0):
            raise ValueError("dimensions must be non-negative")
        if self.k == 6 and self.p is not None and self.p != self.n:
            raise ValueError("no sixth-moment Gram formula is available")
        self.moments.require(self.k)

    @property
    def is_gram(self) -> bool:
        return self.p is not None and self.p != self.n


def f2_square(n: int, m: MomentVector) -> Fraction:
    m.require(2)
    if n == 0:
        return Fraction(1)
    m1, m2 = m[1], m[2]
    return factorial(n) * (m2 + m1**2 * (n - 1)) * (m2 - m1**2) ** (n - 1)


def f2_gram(n: int, p: int, m: MomentVector) -> Fraction:
    if p > n:
        return Fraction(0)
    return binomial(n, p) * f2_square(p, m)


def _nrr_sum(top: int, n: int, p: int, m2: Fraction, m4: Fraction) -> Fraction:
    # m2^(2p) (m4/m2^2 - 3)^j rewritten without division
    r = m4 - 3 * m2**2
    return sum(
        (r**j / factorial(j) * m2 ** (2 * (p - j)) * binomial(n - j + 2, top) for j in range(p + 1)),
        Fraction(0),
    )


def f4_sym_square(n: int, m: MomentVector) -> Fraction:
    """Fourth moment for symmetric (equivalently centered) entries; uses m2, m4 only."""
    m.require(4)
    return factorial(n) ** 2 * _nrr_sum(2, n, n, m[2], m[4])


def f4_sym_gram(n: int, p: int, m: MomentVector) -> Fraction:
    m.require(4)
    if p > n:
        return Fraction(0)
    return factorial(p) ** 2 * binomial(n, p) * _nrr_sum(n - p + 2, n, p, m[2], m[4])


def f4_square(n: int, m: MomentVector, *, qm2_uses_raw_m3: bool = False) -> Fraction:
    """Fourth moment for arbitrary entries via the q_i Taylor coefficients.

    When mu2 = 0 the q_i are undefined; the value then comes from the
    division-free generating function instead.
    """
    m.require(4)
    c = central_from_raw(m)
    if c.mu2 == 0:
        from .genfunc import build_F4, extract_square_moment

        return extract_square_moment(build_F4(m, max(n, 1)), n)
    q = square_taylor_coeffs(m[1], c, qm2_uses_raw_m3=qm2_uses_raw_m3, m3=m[3])
    r = c.mu4 - 3 * c.mu2**2
    total = Fraction(0)
    for j in range(n + 1):
        inner = sum((q[i] * extended_binomial(n - j + i, i) for i in range(-2, 5)), Fraction(0))
        total += r**j / factorial(j) * c.mu2 ** (2 * (n - j)) * inner
    return factorial(n) ** 2 * total


def f4_gram(n: int, p: int, m: MomentVector) -> Fraction:
    """E|U^T U|^2 for arbitrary entries."""
    m.require(4)
    if p > n:
        return Fraction(0)
    if p == 0:
        return Fraction(1)
    c = central_from_raw(m)
    if c.mu2 == 0:
        from .genfunc import build_F4_gram, extract_gram_moment

        return extract_gram_moment(build_F4_gram(m, p, n - p), n, p)
    m1 = m[1]
    d = n - p
    q, qt, qtt = square_taylor_coeffs(m1, c), gram_taylor_coeffs(m1, c), gram_mixed_taylor_coeffs(m1, c)
    coef = {i: q[i] + qt[i] * d + qtt[i] * d * (d + 7) for i in range(-2, 5)}
    r = c.mu4 - 3 * c.mu2**2
    total = Fraction(0)
    for j in range(p + 1):
        inner = sum((coef[i] * extended_binomial(n - j + i, d + i) for i in range(-2, 5)), Fraction(0))
        total += r**j / factorial(j) * c.mu2 ** (2 * (p - j)) * inner
    return factorial(p) ** 2 * binomial(n, p) * total


def _f6_weight(i: int) -> Fraction:
    return Fraction((1 + i) * (2 + i) * math.factorial(4 + i), 48)


def f6_sym_square(n: int, m: MomentVector) -> Fraction:
    """Sixth moment for symmetric entries (uses m2, m4, m6)."""
    m.require(6)
    m2, m4, m6 = m[2], m[4], m[6]
    a = m6 - 15 * m4 * m2 + 30 * m2**3
    b = m4 - 3 * m2**2
    total = Fraction(0)
    for j in range(n + 1):
        for i in range(j + 1):
            total += (
                _f6_weight(i)
                / factorial(n - j)
                * binomial(14 + j + 2 * i, j - i)
                * a ** (n - j)
                * b ** (j - i)
                * m2 ** (j + 2 * i)
            )
    return factorial(n) ** 2 * total


def f6_cen_square(n: int, m: MomentVector) -> Fraction:
    """Sixth moment for centered entries; differs from the symmetric one by m3^2 terms."""
    m.require(6)
    if m[1] != 0:
        raise MomentError("centered sixth-moment formula needs m1 = 0")
    m2, m3, m4, m6 = m[2], m[3], m[4], m[6]
    a = m6 - 10 * m3**2 - 15 * m4 * m2 + 30 * m2**3
    b = m4 - 3 * m2**2
    c = m3**2
    total = Fraction(0)
    for j in range(n + 1):
        for i in range(j + 1):
            head = _f6_weight(i) * binomial(14 + j + 2 * i, j - i) * b ** (j - i) * m2 ** (j + 2 * i)
            for k in range(n - j + 1):
                total += head / factorial(n - j - k) * binomial(10, k) * a ** (n - j - k) * c**k
    return factorial(n) ** 2 * total


def gaussian_even_moment(order: int, n: int) -> Fraction:
    """E|A|^(2*order) for standard normal entries."""
    out = factorial(n) ** order
    for r in range(order):
        out *= binomial(n + 2 * r, 2 * r)
    return out


def wishart_moment(m: int, n: int, p: int, mu: Scalarish, sigma2: Scalarish) -> Fraction:
    """E|U^T U|^m for N(mu, sigma2) entries (non-central Wishart)."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    mu, sigma2 = as_scalar(mu), as_scalar(sigma2)
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    if p > n:
        return Fraction(0)
    if p == 0:
        return Fraction(1)
    prod = Fraction(1)
    for r in range(m):
        prod *= binomial(n + 2 * r, n - p + 2 * r)
    x = n * p * mu**2 / sigma2
    tail = sum(
        (binomial(m, s) * double_factorial(n - 2) / double_factorial(n + 2 * s - 2) * x**s for s in range(m + 1)),
        Fraction(0),
    )
    return factorial(p) ** m * sigma2 ** (m * p) * prod * tail


def gaussian_f4_square(n: int, mu: Scalarish, sigma2: Scalarish) -> Fraction:
    """Polynomial form of f4(n) for N(mu, sigma2) entries."""
    mu, s2 = as_scalar(mu), as_scalar(sigma2)
    return (
        Fraction(1, 2)
        * factorial(n) ** 2
        * (1 + n)
        * s2 ** (2 * (n - 1))
        * (n**3 * mu**4 + (2 + n) * s2 * (2 * n * mu**2 + s2))
    )


def gaussian_f4_gram(n: int, p: int, mu: Scalarish, sigma2: Scalarish) -> Fraction:
    """Polynomial form of f4(n, p) for N(mu, sigma2) entries."""
    mu, s2 = as_scalar(mu), as_scalar(sigma2)
    if p > n:
        return Fraction(0)
    d = n - p
    lead = factorial(n) * factorial(n + 1) * s2 ** (2 * (p - 1)) / (factorial(d) * factorial(d + 2))
    return lead * (n * p**2 * mu**4 + (n + 2) * (2 * p * mu**2 * s2 + s2**2))


EXP1 = preset("exp1").moments


def simplex_volume_moment(d: int, l: int) -> Fraction:
    """E V_d^(2l) for the volume of a random simplex in a unit-volume simplex."""
    if d < 1:
        raise ValueError("d must be positive")
    if l == 1:
        f = f2_square(d + 1, EXP1)
    elif l == 2:
        f = f4_square(d + 1, EXP1)
    else:
        raise ValueError("only l in {1, 2} is available")
    return (factorial(d) / factorial(d + 2 * l)) ** (d + 1) * f


def exp1_asymptotic_polynomial(n: int) -> int:
    return 450 + 141 * n - 27 * n**2 - 5 * n**3 + n**4


@dataclass(frozen=True)
class ExpTimesRational:
    """A value of the form rational * e**exponent."""

    rational: Fraction
    exponent: int

    def bounds(self, digits: int = 200) -> tuple[decimal.Decimal, decimal.Decimal]:
        """Rigorous (lower, upper) decimal enclosure."""
        ctx = decimal.Context(prec=digits + 10)
        e = ctx.exp(decimal.Decimal(self.exponent))
        # exp is correctly rounded: one unit in the last place is a safe slack
        ulp = ctx.scaleb(decimal.Decimal(1), e.adjusted() - ctx.prec + 1)
        lo_e, hi_e = ctx.subtract(e, ulp), ctx.add(e, ulp)
        q = ctx.divide(decimal.Decimal(self.rational.numerator), decimal.Decimal(self.rational.denominator))
        q_ulp = ctx.scaleb(decimal.Decimal(1), q.adjusted() - ctx.prec + 1) if q else decimal.Decimal(0)
        lo_q, hi_q = ctx.subtract(q, q_ulp), ctx.add(q, q_ulp)
        cands = [ctx.multiply(a, b) for a in (lo_q, hi_q) for b in (lo_e, hi_e)]
        lo, hi = min(cands), max(cands)
        return ctx.next_minus(lo), ctx.next_plus(hi)


def f4_asymptotic_exp1(n: int) -> ExpTimesRational:
    """Large-n approximation of f4(n) for Exp(1) entries: (n!)^2 P(n)/2 * e^6."""
    if n < 1:
        raise ValueError("n must be positive")
    return ExpTimesRational(factorial(n) ** 2 * exp1_asymptotic_polynomial(n) / 2, 6)


def asymptotic_relative_deviation(n: int, digits: int = 200) -> tuple[decimal.Decimal, decimal.Decimal]:
    """Enclosure of |f4(n)/approx(n) - 1| for Exp(1) entries."""
    exact = f4_square(n, EXP1)
    lo, hi = f4_asymptotic_exp1(n).bounds(digits)
    ctx = decimal.Context(prec=digits + 10)
    ex = ctx.divide(decimal.Decimal(exact.numerator), decimal.Decimal(exact.denominator))
    # exact/approx - 1 lies between these two (approx > 0)
    a = ctx.subtract(ctx.divide(ex, hi), 1)
    b = ctx.subtract(ctx.divide(ex, lo), 1)
    lo_r, hi_r = min(a, b), max(a, b)
    if lo_r >= 0:
        return ctx.next_minus(lo_r), ctx.next_plus(hi_r)
    if hi_r <= 0:
        return ctx.next_minus(-hi_r), ctx.next_plus(-lo_r)
    return decimal.Decimal(0), ctx.next_plus(max(-lo_r, hi_r))


def closed_form(query: MomentQuery) -> Fraction:
    """Dispatch a query to the applicable closed form."""
    m, n, p, k = query.moments, query.n, query.p, query.k
    if k == 2:
        return f2_square(n, m) if p is None else f2_gram(n, p, m)
    if k == 4:
        return f4_square(n, m) if p is None else f4_gram(n, p, m)
    if m.is_symmetric():
        return f6_sym_square(n, m)
    if m.is_centered():
        return f6_cen_square(n, m)
    raise MomentError("no sixth-moment formula for non-centered entries")
