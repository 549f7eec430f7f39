"""Recurrence-based evaluation of fourth moments.

Square case: write A = B + m1 * 1 1^T with B centered, so |A| = |B| + m1 S,
and evaluate each E|B|^a S^b from recurrences in g4, h0, h9, h10.

Gram case: Cauchy-Binet turns E|U^T U|^2 and eight auxiliary moments
(alpha .. kappa) into a mutually recursive system over (n, p). The system
is circular on the diagonal band, so f4(q, q), delta(q, q) and
beta(q + 1, q) are injected from their closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import inv_factorial
from .closedform import f4_square, f4_sym_gram, f4_sym_square
from .moments import CentralMoments, MomentError, MomentVector, central_from_raw


@dataclass
class HState:
    """Memo tables for g4, h0, h9, h10 at fixed central moments."""

    central: CentralMoments
    g4_memo: dict[int, Fraction] = field(default_factory=dict)
    h0_memo: dict[int, Fraction] = field(default_factory=dict)
    h9_memo: dict[int, Fraction] = field(default_factory=dict)
    h10_memo: dict[int, Fraction] = field(default_factory=dict)

    def g4(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n not in self.g4_memo:
            self.g4_memo[n] = f4_sym_square(n, self.central.as_raw())
        return self.g4_memo[n]

    def h0(self, n: int) -> Fraction:
        # iterative to keep deep n off the call stack
        if n <= 0:
            return Fraction(0)
        u2 = self.central.mu2
        start = max((k for k in self.h0_memo if k <= n), default=0)
        prev = self.h0_memo.get(start, Fraction(0))
        for k in range(start + 1, n + 1):
            prev = u2 * self.g4(k - 1) + (k - 1) ** 2 * u2**2 * prev
            self.h0_memo[k] = prev
        return self.h0_memo[n]

    def h9(self, n: int) -> Fraction:
        if n <= 0:
            return Fraction(0)
        u2 = self.central.mu2
        for k in range(1, n + 1):
            if k not in self.h9_memo:
                self.h9_memo[k] = (
                    u2 * self.h0(k - 1)
                    + (k - 2) ** 2 * u2**3 * self.h0(k - 2)
                    + (k - 2) ** 2 * u2**2 * self.h9_memo.get(k - 1, Fraction(0))
                )
        return self.h9_memo[n]

    def h10(self, n: int) -> Fraction:
        if n <= 0:
            return Fraction(0)
        u2 = self.central.mu2
        for k in range(1, n + 1):
            if k not in self.h10_memo:
                self.h10_memo[k] = (k - 2) ** 2 * u2**3 * self.h0(k - 2) + (k - 2) ** 2 * u2**2 * self.h10_memo.get(
                    k - 1, Fraction(0)
                )
        return self.h10_memo[n]


def g4(n: int, c: CentralMoments) -> Fraction:
    return HState(c).g4(n)


def h0(n: int, c: CentralMoments) -> Fraction:
    return HState(c).h0(n)


def h9_h10(n: int, c: CentralMoments) -> tuple[Fraction, Fraction]:
    st = HState(c)
    return st.h9(n), st.h10(n)


def summands(n: int, m: MomentVector, state: HState | None = None) -> tuple[Fraction, ...]:
    """(E|B|^4, E|B|^3 S, E|B|^2 S^2, E|B| S^3, E S^4)."""
    m.require(4)
    st = state or HState(central_from_raw(m))
    c = st.central
    u2, u3 = c.mu2, c.mu3
    g, h = st.g4, st.h0
    a1 = n**2
    a2 = a1 * (n - 1) ** 2
    a3 = a2 * (n - 2) ** 2
    a4 = a3 * (n - 3) ** 2
    return (
        g(n),
        a1 * u3 * g(n - 1),
        a1 * h(n) + a2 * u3**2 * g(n - 2),
        3 * a2 * u3 * h(n - 1) + a3 * u3**3 * g(n - 3),
        a1 * g(n - 1)
        + 6 * a2 * u2 * h(n - 1)
        + 3 * a2 * st.h9(n)
        + 6 * a2 * st.h10(n)
        + 6 * a3 * u3**2 * h(n - 2)
        + a4 * u3**4 * g(n - 4),
    )


def f4_square_via_summands(n: int, m: MomentVector) -> Fraction:
    """E(|B| + m1 S)^4 expanded binomially."""
    m1 = m[1]
    s = summands(n, m)
    return s[0] + 4 * m1 * s[1] + 6 * m1**2 * s[2] + 4 * m1**3 * s[3] + m1**4 * s[4]


def delta_diag(n: int, m: MomentVector, state: HState | None = None) -> Fraction:
    """E|A|^2 |B|^2 = E(|B| + m1 S)^2 |B|^2."""
    m.require(4)
    s = summands(n, m, state)
    m1 = m[1]
    return s[0] + 2 * m1 * s[1] + m1**2 * s[2]


def beta_band(p: int, m: MomentVector, state: HState | None = None) -> Fraction:
    """beta(p + 1, p) = E|V-bar|^4 for the square (p+1) x (p+1) bordered matrix."""
    m.require(4)
    st = state or HState(central_from_raw(m))
    return (p + 1) * (st.g4(p) + 3 * p**2 * st.central.mu2 * st.h0(p))


def selection_weight(n: int, *factorial_args: int) -> Fraction:
    """n! / prod(k!) with 1/k! = 0 for negative k."""
    out = Fraction(math.factorial(n))
    for k in factorial_args:
        out *= inv_factorial(k)
    return out


class RecursionDepthError(RuntimeError):
    pass


class GramRecState:
    """Demand-driven evaluation of the Gram recurrence system at fixed moments.

    Memo keys are (name, n, p). Values with p outside the nonzero range
    vanish; p = 0 uses the base values; the band seeds break the circular
    dependencies on the diagonal.
    """

    NAMES = ("f4", "alpha", "beta", "gamma", "delta", "epsilon", "eta", "rho", "kappa", "g4")

    def __init__(self, m: MomentVector, max_depth: int = 2000):
        m.require(4)
        self.m = m
        self.c = central_from_raw(m)
        if self.c.mu2 == 0:
            raise MomentError("the Gram recurrences divide by mu2; mu2 = 0 is not supported")
        self.h = HState(self.c)
        self.memo: dict[tuple[str, int, int], Fraction] = {}
        self.max_depth = max_depth
        self._depth = 0

    def get(self, name: str, n: int, p: int) -> Fraction:
        key = (name, n, p)
        if key in self.memo:
            return self.memo[key]
        if self._depth >= self.max_depth:
            raise RecursionDepthError(f"recursion depth exceeded evaluating {name}({n},{p})")
        self._depth += 1
        try:
            val = self._eval(name, n, p)
        finally:
            self._depth -= 1
        self.memo[key] = val
        return val

    # vanishing thresholds: value is zero once p >= n + offset
    _ZERO_FROM = {
        "f4": 1, "g4": 1, "alpha": 0, "beta": 0, "epsilon": 0, "eta": 0,
        "gamma": 1, "delta": 1, "rho": 1, "kappa": 2,
    }  # fmt: skip

    _BASE = {
        "gamma": lambda n: 0, "epsilon": lambda n: 0, "rho": lambda n: 0, "kappa": lambda n: 0,
        "delta": lambda n: 1, "alpha": lambda n: n, "eta": lambda n: n, "beta": lambda n: n * n,
        "f4": lambda n: 1, "g4": lambda n: 1,
    }  # fmt: skip

    def _eval(self, name: str, n: int, p: int) -> Fraction:
        if n < 0 or p < 0 or p >= n + self._ZERO_FROM[name]:
            return Fraction(0)
        if p == 0:
            return Fraction(self._BASE[name](n))
        if name == "g4":
            return f4_sym_gram(n, p, self.c.as_raw())
        if name == "f4" and p == n:
            return f4_square(n, self.m)
        if name == "delta" and p == n:
            return delta_diag(n, self.m, self.h)
        if name == "beta" and n == p + 1:
            return beta_band(p, self.m, self.h)
        return getattr(self, "_" + name)(n, p)

    # Each relation below sums over the overlap q of two row selections.

    def _f4(self, n, p):
        u2, m1 = self.c.mu2, self.m[1]
        g = self.get
        return sum(
            (
                selection_weight(n, q, n - 2 * p + q)
                * u2 ** (2 * (p - q))
                * (g("f4", p, q) + 2 * m1**2 / u2 * g("alpha", p, q) + m1**4 / u2**2 * g("beta", p, q))
                for q in range(p + 1)
            ),
            Fraction(0),
        )

    def _alpha(self, n, p):
        u2, m1 = self.c.mu2, self.m[1]
        g = self.get
        return sum(
            (
                selection_weight(n, q, n - 2 * p + q - 1)
                * u2 ** (2 * (p - q))
                * (
                    u2 * g("gamma", p, q)
                    + g("delta", p, q)
                    + m1**2 * g("epsilon", p, q)
                    + m1**2 / u2 * g("eta", p, q)
                )
                for q in range(p + 1)
            ),
            Fraction(0),
        )

    def _eta(self, n, p):
        u2 = self.c.mu2
        g = self.get
        return sum(
            (
                selection_weight(n, q, n - 2 * p + q - 1) * u2 ** (2 * (p - q)) * (u2 * g("rho", p, q) + g("g4", p, q))
                for q in range(p + 1)
            ),
            Fraction(0),
        )

    def _gamma(self, n, p):
        u2, m1 = self.c.mu2, self.m[1]
        g = self.get
        return sum(
            (
                selection_weight(n, q, n - 2 * p + q + 1)
                * u2 ** (2 * p - 2 * q - 1)
                * (g("alpha", p, q) + m1**2 / u2 * g("beta", p, q))
                for q in range(p)
            ),
            Fraction(0),
        )

    def _rho(self, n, p):
        u2 = self.c.mu2
        return sum(
            (
                selection_weight(n, q, n - 2 * p + q + 1) * u2 ** (2 * p - 2 * q - 1) * self.get("eta", p, q)
                for q in range(p)
            ),
            Fraction(0),
        )

    def _beta(self, n, p):
        u2 = self.c.mu2
        g = self.get
        return sum(
            (
                selection_weight(n, q, n - 2 * p + q - 2)
                * u2 ** (2 * (p - q))
                * (u2**2 * g("kappa", p, q) + 2 * u2 * g("rho", p, q) + g("g4", p, q))
                for q in range(p + 2)
            ),
            Fraction(0),
        )

    def _kappa(self, n, p):
        u2 = self.c.mu2
        return sum(
            (
                selection_weight(n, q, n - 2 * p + q + 2) * u2 ** (2 * (p - q - 1)) * self.get("beta", p, q)
                for q in range(p)
            ),
            Fraction(0),
        )

    def _delta(self, n, p):
        u2, m1 = self.c.mu2, self.m[1]
        g = self.get
        return sum(
            (
                selection_weight(n, q, n - 2 * p + q)
                * u2 ** (2 * (p - q))
                * (g("delta", p, q) + m1**2 / u2 * g("eta", p, q))
                for q in range(p + 1)
            ),
            Fraction(0),
        )

    def _epsilon(self, n, p):
        u2 = self.c.mu2
        g = self.get
        return sum(
            (
                selection_weight(n, q, n - 2 * p + q)
                * u2 ** (2 * p - 2 * q - 1)
                * (u2 * g("epsilon", p, q) + g("eta", p, q))
                for q in range(p)
            ),
            Fraction(0),
        )


def f4_gram_via_recurrence(n: int, p: int, m: MomentVector, state: GramRecState | None = None) -> Fraction:
    if p > n:
        return Fraction(0)
    st = state or GramRecState(m)
    return st.get("f4", n, p)
