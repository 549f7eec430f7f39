"""Derangements by cycle count, the permutation-table formula for the
symmetric fourth moment, and the row-selection counts of the Gram recurrences."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterator

from .algebra import (
    Scalarish,
    as_scalar,
    binomial,
    factorial,
    linear_exp,
    series_reciprocal_power,
)
from .moments import MomentVector
from .recurrences import selection_weight

MAX_ENUMERATION = 10


@dataclass(frozen=True)
class CycleProfile:
    j: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _guard(j: int) -> None:
    if j < 0:
        raise ValueError("size must be non-negative")
    if j > MAX_ENUMERATION:
        raise ValueError(f"derangement enumeration limited to size {MAX_ENUMERATION}, got {j}")


def iter_derangement_cycles(j: int) -> Iterator[int]:
    """Yield the cycle count of every derangement of size j, once each.

    Cycles are built one at a time starting from the smallest free element
    and may only close after reaching length 2, so no fixed point is ever
    produced.
    """
    free = [True] * j

    def open_cycle(remaining: int, cycles: int) -> Iterator[int]:
        if remaining == 0:
            yield cycles
            return
        start = free.index(True)
        free[start] = False
        yield from extend(1, remaining - 1, cycles)
        free[start] = True

    def extend(length: int, remaining: int, cycles: int) -> Iterator[int]:
        if length >= 2:
            yield from open_cycle(remaining, cycles + 1)
        for nxt in range(j):
            if free[nxt]:
                free[nxt] = False
                yield from extend(length + 1, remaining - 1, cycles)
                free[nxt] = True

    yield from open_cycle(j, 0)


@lru_cache(maxsize=None)
def _profile_items(j: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(iter_derangement_cycles(j)).items()))


def derangement_cycle_profile(j: int) -> CycleProfile:
    _guard(j)
    return CycleProfile(j, dict(_profile_items(j)))


def derangement_weight_sum(j: int, u: Scalarish) -> Fraction:
    """sum over derangements pi of size j of u^C(pi)."""
    u = as_scalar(u)
    return sum((cnt * u**c for c, cnt in derangement_cycle_profile(j).counts.items()), Fraction(0))


@dataclass(frozen=True)
class EgfReport:
    u: int
    j_max: int
    rows: tuple[tuple[int, Fraction, Fraction], ...]

    @property
    def holds(self) -> bool:
        return all(a == b for _, a, b in self.rows)


def egf_check(j_max: int, u: int) -> EgfReport:
    """Compare enumerated weight sums with j! [x^j] e^(-ux) (1-x)^(-u)."""
    if not (isinstance(u, int) and 1 <= u <= 4):
        raise ValueError("u must be an integer in 1..4")
    _guard(j_max)
    series = linear_exp(-u, j_max) * series_reciprocal_power(1, u, j_max)
    rows = tuple((j, derangement_weight_sum(j, u), factorial(j) * series[j]) for j in range(j_max + 1))
    return EgfReport(u, j_max, rows)


def f4_sym_via_tables(n: int, m: MomentVector) -> Fraction:
    """sum_j C(n,j)^2 (n-j)! m4^(n-j) j! m2^(2j) sum_{pi in D_j} 3^C(pi)."""
    _guard(n)
    m.require(4)
    m2, m4 = m[2], m[4]
    return sum(
        (
            binomial(n, j) ** 2
            * factorial(n - j)
            * m4 ** (n - j)
            * factorial(j)
            * m2 ** (2 * j)
            * derangement_weight_sum(j, 3)
            for j in range(n + 1)
        ),
        Fraction(0),
    )


def selection_count(kind: str, n: int, p: int, q: int) -> Fraction:
    """Ways to choose two row subsets of [n] overlapping in exactly q rows.

    c: sizes (p, p); d: sizes (p, p + 1); e: sizes (p + 1, p - 1).
    """
    if q < 0:
        return Fraction(0)
    if kind == "c":
        return selection_weight(n, q, p - q, p - q, n - 2 * p + q)
    if kind == "d":
        return selection_weight(n, q, p - q, p - q + 1, n - 2 * p + q - 1)
    if kind == "e":
        return selection_weight(n, q, p - q + 1, p - q - 1, n - 2 * p + q)
    raise ValueError(f"unknown selection count kind {kind!r}")
