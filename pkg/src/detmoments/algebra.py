"""Exact scalars, combinatorial primitives and truncated formal power series.

Every rational quantity in the package is a :class:`fractions.Fraction`;
series are immutable and truncated, and asking for a coefficient beyond the
truncation order raises instead of returning zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

ExactScalar = Fraction
Scalarish = Union[int, Fraction]

DEFAULT_ORDER = 32
DEFAULT_BIVARIATE_ORDER = (16, 16)


class UndefinedBinomialError(ValueError):
    """Raised for extended-binomial arguments outside the supported cases."""


def as_scalar(x: Scalarish | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def format_rational(x: Scalarish) -> str:
    """Render ``x`` as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = as_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; floats and decimals are rejected."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def factorial(n: int) -> Fraction:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return Fraction(math.factorial(n))


def inv_factorial(n: int) -> Fraction:
    """1/n!, with the reciprocal of a negative-integer factorial taken as 0."""
    if n < 0:
        return Fraction(0)
    return Fraction(1, math.factorial(n))


def double_factorial(n: int) -> Fraction:
    """n!! with (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    out = 1
    for k in range(n, 0, -2):
        out *= k
    return Fraction(out)


def binomial(a: int, b: int) -> Fraction:
    if a < 0:
        raise ValueError(f"binomial requires a >= 0, got {a}")
    if b < 0 or b > a:
        return Fraction(0)
    return Fraction(math.comb(a, b))


def extended_binomial(a: int, b: int) -> Fraction:
    """Binomial coefficient with the negative-index conventions used by the
    f4 Taylor-coefficient sums.

    Defined cases: C(-2,-2) = C(-1,-1) = 1, C(-1,-2) = -1, C(j,-2) = C(j,-1) = 0
    for j >= 0, and the ordinary coefficient for a, b >= 0. Anything else
    raises :class:`UndefinedBinomialError`.
    """
    if b >= 0:
        if a >= 0:
            return binomial(a, b)
        raise UndefinedBinomialError(f"undefined extended binomial C({a},{b})")
    if b in (-1, -2):
        if a >= 0:
            return Fraction(0)
        if a == b:
            return Fraction(1)
        if (a, b) == (-1, -2):
            return Fraction(-1)
    raise UndefinedBinomialError(f"undefined extended binomial C({a},{b})")


@dataclass(frozen=True)
class FormalSeries:
    """Truncated power series sum_{i<=order} c_i t^i with exact coefficients."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a series needs at least the constant coefficient")

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[Scalarish], order: int | None = None) -> FormalSeries:
        cs = [as_scalar(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(tuple(cs))

    @classmethod
    def constant(cls, c: Scalarish, order: int = DEFAULT_ORDER) -> FormalSeries:
        return cls.from_coefficients([c], order)

    @classmethod
    def monomial(cls, c: Scalarish, power: int, order: int = DEFAULT_ORDER) -> FormalSeries:
        cs = [Fraction(0)] * (order + 1)
        if power <= order:
            cs[power] = as_scalar(c)
        return cls(tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> Fraction:
        if not 0 <= i <= self.order:
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coefficients[i]

    def __len__(self) -> int:
        return len(self.coefficients)

    def truncate(self, order: int) -> FormalSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return FormalSeries(self.coefficients[: order + 1])

    def _coerce(self, other) -> FormalSeries | None:
        if isinstance(other, FormalSeries):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FormalSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        return FormalSeries(tuple(self.coefficients[i] + other.coefficients[i] for i in range(n + 1)))

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = as_scalar(other)
            return FormalSeries(tuple(c * x for x in self.coefficients))
        if isinstance(other, FormalSeries):
            return series_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, k: int) -> FormalSeries:
        """Multiply by t**k, keeping the truncation order."""
        if k < 0:
            raise ValueError("negative shift")
        cs = (Fraction(0),) * k + self.coefficients
        return FormalSeries(cs[: self.order + 1])

    def derivative(self) -> FormalSeries:
        """d/dt; the result has order one less (order 0 maps to the zero series)."""
        cs = tuple(i * self.coefficients[i] for i in range(1, self.order + 1))
        return FormalSeries(cs or (Fraction(0),))

    def exp(self) -> FormalSeries:
        return series_exp(self)

    def __repr__(self):
        terms = ", ".join(format_rational(c) for c in self.coefficients[:6])
        more = ", ..." if self.order >= 6 else ""
        return f"FormalSeries([{terms}{more}], order={self.order})"


def series_mul(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    n = min(a.order, b.order)
    ac, bc = a.coefficients, b.coefficients
    out = []
    for k in range(n + 1):
        s = Fraction(0)
        for i in range(k + 1):
            if ac[i] and bc[k - i]:
                s += ac[i] * bc[k - i]
        out.append(s)
    return FormalSeries(tuple(out))


def series_exp(a: FormalSeries) -> FormalSeries:
    """exp(a) for a series with zero constant term.

    Uses n e_n = sum_{k=1}^n k a_k e_{n-k}, from e' = a' e.
    """
    if a.coefficients[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    ac = a.coefficients
    e = [Fraction(1)]
    for n in range(1, a.order + 1):
        s = sum((k * ac[k] * e[n - k] for k in range(1, n + 1) if ac[k]), Fraction(0))
        e.append(s / n)
    return FormalSeries(tuple(e))


def series_reciprocal_power(c: Scalarish, k: int, order: int = DEFAULT_ORDER) -> FormalSeries:
    """Expansion of 1/(1 - c t)**k."""
    if k < 1:
        raise ValueError("power must be a positive integer")
    c = as_scalar(c)
    return FormalSeries(tuple(Fraction(math.comb(n + k - 1, k - 1)) * c**n for n in range(order + 1)))


def linear_exp(c: Scalarish, order: int = DEFAULT_ORDER) -> FormalSeries:
    """exp(c t), built coefficientwise."""
    c = as_scalar(c)
    out, term = [], Fraction(1)
    for n in range(order + 1):
        out.append(term)
        term = term * c / (n + 1)
    return FormalSeries(tuple(out))


def polynomial(coeffs: Sequence[Scalarish], order: int = DEFAULT_ORDER) -> FormalSeries:
    return FormalSeries.from_coefficients(coeffs, order)


@dataclass(frozen=True)
class BivariateSeries:
    """Rectangular truncation of sum c[i][j] t^i w^j, 0 <= i <= N_t, 0 <= j <= N_w."""

    coefficients: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.coefficients or not self.coefficients[0]:
            raise ValueError("empty bivariate series")
        width = len(self.coefficients[0])
        if any(len(row) != width for row in self.coefficients):
            raise ValueError("bivariate coefficient grid must be rectangular")

    @classmethod
    def from_omega_slices(cls, slices: Sequence[FormalSeries], order_t: int) -> BivariateSeries:
        """Assemble from the coefficient series of w^0, w^1, ... ."""
        rows = tuple(tuple(s[i] for s in slices) for i in range(order_t + 1))
        return cls(rows)

    @property
    def truncation(self) -> tuple[int, int]:
        return len(self.coefficients) - 1, len(self.coefficients[0]) - 1

    def coefficient(self, i: int, j: int) -> Fraction:
        nt, nw = self.truncation
        if not (0 <= i <= nt and 0 <= j <= nw):
            raise IndexError(f"coefficient ({i},{j}) outside truncation ({nt},{nw})")
        return self.coefficients[i][j]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.coefficient(*ij)

    def omega_slice(self, j: int) -> FormalSeries:
        nt, nw = self.truncation
        if not 0 <= j <= nw:
            raise IndexError(f"omega power {j} outside truncation {nw}")
        return FormalSeries(tuple(self.coefficients[i][j] for i in range(nt + 1)))

    def __add__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        nt = min(self.truncation[0], other.truncation[0])
        nw = min(self.truncation[1], other.truncation[1])
        return BivariateSeries(
            tuple(
                tuple(self.coefficients[i][j] + other.coefficients[i][j] for j in range(nw + 1))
                for i in range(nt + 1)
            )
        )

    def items(self):
        """Yield (i, j, coefficient) in t-major order."""
        for i, row in enumerate(self.coefficients):
            for j, c in enumerate(row):
                yield i, j, c
