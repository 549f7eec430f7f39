"""Exact ground truth: rational linear algebra and exhaustive expectations
over finite discrete distributions."""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Scalarish, as_scalar
from .moments import DistributionPreset, MomentVector, discrete_moments

DEFAULT_BUDGET = 10**6
BUDGET_ENV = "DETMOMENTS_BUDGET"
MAX_COFACTOR = 8


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("dimensions must be non-negative")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalarish]], cols: int | None = None) -> RationalMatrix:
        grid = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        ncols = cols if cols is not None else (len(grid[0]) if grid else 0)
        return cls(len(grid), ncols, grid)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> RationalMatrix:
        grid = tuple(tuple(r[j] for r in self.entries) for j in range(self.cols))
        return RationalMatrix(self.cols, self.rows, grid)

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [tuple(other.entries[k][j] for k in range(other.rows)) for j in range(other.cols)]
        grid = tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in self.entries)
        return RationalMatrix(self.rows, other.cols, grid)

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        grid = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        return RationalMatrix(self.rows, self.cols, grid)

    def scale(self, c: Scalarish) -> RationalMatrix:
        c = as_scalar(c)
        return RationalMatrix(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.entries))

    def minor(self, i: int, j: int) -> RationalMatrix:
        """Delete row i and column j."""
        grid = tuple(r[:j] + r[j + 1 :] for k, r in enumerate(self.entries) if k != i)
        return RationalMatrix(self.rows - 1, self.cols - 1, grid)

    def select_rows(self, idx: Sequence[int]) -> RationalMatrix:
        return RationalMatrix(len(idx), self.cols, tuple(self.entries[i] for i in idx))

    def delete_rows(self, idx: Sequence[int]) -> RationalMatrix:
        drop = set(idx)
        grid = tuple(r for i, r in enumerate(self.entries) if i not in drop)
        return RationalMatrix(len(grid), self.cols, grid)


def _require_square(m: RationalMatrix) -> None:
    if not m.is_square:
        raise ValueError(f"square matrix required, got {m.rows}x{m.cols}")


def det_exact(m: RationalMatrix) -> Fraction:
    """Bareiss elimination on the integer matrix obtained by clearing row denominators."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a: list[list[int]] = []
    for row in m.entries:
        den = math.lcm(*(x.denominator for x in row))
        scale /= den
        a.append([int(x * den) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1] * scale


def det_cofactor(m: RationalMatrix) -> Fraction:
    """Laplace expansion along the first row; an independent check for small matrices."""
    _require_square(m)
    if m.rows > MAX_COFACTOR:
        raise ValueError(f"cofactor expansion limited to {MAX_COFACTOR}x{MAX_COFACTOR}")

    def rec(grid: tuple[tuple[Fraction, ...], ...]) -> Fraction:
        if not grid:
            return Fraction(1)
        total = Fraction(0)
        for j, x in enumerate(grid[0]):
            if x:
                sub = tuple(r[:j] + r[j + 1 :] for r in grid[1:])
                total += (-1) ** j * x * rec(sub)
        return total

    return rec(m.entries)


def adjugate_exact(m: RationalMatrix) -> RationalMatrix:
    _require_square(m)
    n = m.rows
    if n == 0:
        raise ValueError("adjugate needs n >= 1")
    grid = tuple(tuple((-1) ** (i + j) * det_exact(m.minor(j, i)) for j in range(n)) for i in range(n))
    return RationalMatrix(n, n, grid)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: Fraction
    rhs: tuple[Fraction, ...]

    @property
    def holds(self) -> bool:
        return all(r == self.lhs for r in self.rhs)


def _column(v: Sequence[Scalarish]) -> RationalMatrix:
    return RationalMatrix.from_rows([[x] for x in v], cols=1)


def check_matrix_det_lemma(c: RationalMatrix, u: Sequence[Scalarish], v: Sequence[Scalarish], lam: Scalarish) -> IdentityReport:
    """|C + lam u v^T| against |C| + lam v^T adj(C) u."""
    _require_square(c)
    if len(u) != c.rows or len(v) != c.rows:
        raise ValueError("u and v must match the size of C")
    lam = as_scalar(lam)
    uc, vc = _column(u), _column(v)
    lhs = det_exact(c + (uc @ vc.transpose()).scale(lam))
    rhs = det_exact(c) + lam * (vc.transpose() @ adjugate_exact(c) @ uc)[0, 0]
    return IdentityReport("matrix-determinant-lemma", lhs, (rhs,))


def check_cauchy_binet(c: RationalMatrix, d: RationalMatrix) -> IdentityReport:
    """|C^T D| against the minor-product sums in selecting and deleting form.

    Selecting form: sum over p-subsets S of rows of |C_S| |D_S|.
    Deleting form: sum over (n-p)-subsets T of rows to remove, same products.
    """
    if (c.rows, c.cols) != (d.rows, d.cols):
        raise ValueError("C and D must have the same shape")
    n, p = c.rows, c.cols
    lhs = det_exact(c.transpose() @ d)
    selecting = sum(
        (det_exact(c.select_rows(s)) * det_exact(d.select_rows(s)) for s in itertools.combinations(range(n), p)),
        Fraction(0),
    )
    deleting = Fraction(0)
    if p <= n:
        for t in itertools.combinations(range(n), n - p):
            deleting += det_exact(c.delete_rows(t)) * det_exact(d.delete_rows(t))
    return IdentityReport("cauchy-binet", lhs, (selecting, deleting))


def check_rank_one_shift(b: RationalMatrix, m1: Scalarish) -> IdentityReport:
    """|B + m1 1 1^T| against |B| + m1 sum_ij (-1)^(i+j) |B_ij|."""
    _require_square(b)
    m1 = as_scalar(m1)
    n = b.rows
    ones = RationalMatrix(n, n, tuple((m1,) * n for _ in range(n)))
    lhs = det_exact(b + ones)
    s = sum(((-1) ** (i + j) * det_exact(b.minor(i, j)) for i in range(n) for j in range(n)), Fraction(0))
    return IdentityReport("rank-one-shift", lhs, (det_exact(b) + m1 * s,))


@dataclass(frozen=True)
class DiscreteDistribution:
    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a discrete distribution needs at least one atom")
        if any(p <= 0 for _, p in self.atoms):
            raise ValueError("atom probabilities must be positive")
        if sum(p for _, p in self.atoms) != 1:
            raise ValueError("atom probabilities must sum to 1")

    @classmethod
    def of(cls, atoms: Sequence[tuple[Scalarish, Scalarish]]) -> DiscreteDistribution:
        return cls(tuple((as_scalar(v), as_scalar(p)) for v, p in atoms))

    @classmethod
    def from_preset(cls, dist: DistributionPreset) -> DiscreteDistribution:
        if dist.atoms is None:
            raise ValueError(f"{dist.name} is not a finite discrete distribution")
        return cls(dist.atoms)

    def moments(self, order: int = 6) -> MomentVector:
        return discrete_moments(self.atoms, order)


class BudgetExceededError(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} matrix evaluations, budget is {budget}")
        self.required = required
        self.budget = budget


def configured_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def _partial_sum(atoms: tuple[tuple[Fraction, Fraction], ...], n: int, p: int, k: int, first: int | None) -> Fraction:
    """Sum over assignments in row-major odometer order, optionally with entry (0, 0) fixed."""
    cells = n * p
    values = [v for v, _ in atoms]
    probs = [w for _, w in atoms]
    square = n == p
    lead = [first] if first is not None else list(range(len(atoms)))
    total = Fraction(0)
    for head in lead:
        for tail in itertools.product(range(len(atoms)), repeat=cells - 1):
            idx = (head,) + tail
            weight = Fraction(1)
            for i in idx:
                weight *= probs[i]
            u = RationalMatrix(n, p, tuple(tuple(values[idx[r * p + c]] for c in range(p)) for r in range(n)))
            if square:
                val = det_exact(u) ** k
            else:
                val = det_exact(u.transpose() @ u) ** (k // 2)
            total += weight * val
    return total


def _partial_sum_star(args):
    return _partial_sum(*args)


def brute_force_moment(
    dist: DiscreteDistribution,
    n: int,
    p: int | None = None,
    k: int = 4,
    *,
    budget: int | None = None,
    workers: int = 1,
) -> Fraction:
    """Exact E|U^T U|^(k/2) (or E|A|^k when p = n) by full enumeration."""
    p = n if p is None else p
    if n < 0 or p < 0:
        raise ValueError("dimensions must be non-negative")
    if k < 1 or (p != n and k % 2):
        raise ValueError("Gram moments need an even k")
    if p == 0:
        return Fraction(1)
    if n == 0:
        return Fraction(0)
    limit = configured_budget(budget)
    required = len(dist.atoms) ** (n * p)
    if required > limit:
        raise BudgetExceededError(required, limit)
    if workers <= 1 or len(dist.atoms) == 1:
        return _partial_sum(dist.atoms, n, p, k, None)
    jobs = [(dist.atoms, n, p, k, i) for i in range(len(dist.atoms))]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_partial_sum_star, jobs))
    # exact sums, so combining in atom order is just for tidiness
    return sum(parts, Fraction(0))
