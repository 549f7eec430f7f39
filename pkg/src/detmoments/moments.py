"""Raw and central moments of the matrix entries, plus named distributions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import Scalarish, as_scalar, double_factorial, format_rational, parse_rational


class MomentError(ValueError):
    pass


@dataclass(frozen=True)
class MomentVector:
    """Raw moments m_1..m_k of a single entry, k in {2, 4, 6}."""

    m: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.m) not in (2, 4, 6):
            raise MomentError(f"moment vector must have order 2, 4 or 6, got {len(self.m)}")

    @classmethod
    def of(cls, *values: Scalarish) -> MomentVector:
        return cls(tuple(as_scalar(v) for v in values))

    @property
    def order(self) -> int:
        return len(self.m)

    def __getitem__(self, r: int) -> Fraction:
        """m_r with m_0 = 1."""
        if r == 0:
            return Fraction(1)
        if not 1 <= r <= self.order:
            raise MomentError(f"m_{r} not available in an order-{self.order} moment vector")
        return self.m[r - 1]

    def truncated(self, order: int) -> MomentVector:
        if order > self.order:
            raise MomentError(f"need order {order}, have {self.order}")
        return MomentVector(self.m[:order])

    def with_moment(self, r: int, value: Scalarish) -> MomentVector:
        m = list(self.m)
        m[r - 1] = as_scalar(value)
        return MomentVector(tuple(m))

    def require(self, order: int) -> None:
        if self.order < order:
            raise MomentError(f"operation needs moments up to m_{order}, got order {self.order}")

    def validate(self) -> None:
        """Realizability check: m2 >= m1**2."""
        if self[2] < self[1] ** 2:
            raise MomentError("m2 < m1^2: moments are not realizable")

    def is_centered(self) -> bool:
        return self[1] == 0

    def is_symmetric(self) -> bool:
        return all(self[r] == 0 for r in range(1, self.order + 1, 2))

    def __str__(self):
        return ",".join(f"m{r}={format_rational(v)}" for r, v in enumerate(self.m, 1))


@dataclass(frozen=True)
class CentralMoments:
    mu2: Fraction
    mu3: Fraction
    mu4: Fraction

    def as_raw(self) -> MomentVector:
        """The moment vector (0, mu2, mu3, mu4) of the centered entry."""
        return MomentVector((Fraction(0), self.mu2, self.mu3, self.mu4))


def central_from_raw(m: MomentVector) -> CentralMoments:
    m.require(4)
    m1, m2, m3, m4 = m[1], m[2], m[3], m[4]
    return CentralMoments(
        mu2=m2 - m1**2,
        mu3=m3 - 3 * m1 * m2 + 2 * m1**3,
        mu4=m4 - 4 * m1 * m3 + 6 * m1**2 * m2 - 3 * m1**4,
    )


def discrete_moments(atoms: Sequence[tuple[Fraction, Fraction]], order: int = 6) -> MomentVector:
    return MomentVector(tuple(sum(p * v**r for v, p in atoms) for r in range(1, order + 1)))


def normal_moments(mu: Scalarish, sigma2: Scalarish, order: int = 6) -> MomentVector:
    """Raw moments of N(mu, sigma2): E X^r = sum_k C(r,2k) mu^(r-2k) sigma2^k (2k-1)!!."""
    mu, sigma2 = as_scalar(mu), as_scalar(sigma2)
    out = []
    for r in range(1, order + 1):
        out.append(
            sum(
                math.comb(r, 2 * k) * mu ** (r - 2 * k) * sigma2**k * double_factorial(2 * k - 1)
                for k in range(r // 2 + 1)
            )
        )
    return MomentVector(tuple(out))


@dataclass(frozen=True)
class DistributionPreset:
    """A named entry distribution: exact moments plus what the sampler needs.

    ``sampler_kind`` is one of ``two-point``, ``finite-discrete``,
    ``exponential`` or ``normal``; ``params`` holds its parameters
    (atoms as (value, probability) pairs, or (mu, sigma2)).
    """

    name: str
    moments: MomentVector
    sampler_kind: str
    params: tuple = field(default=())

    @property
    def atoms(self) -> tuple[tuple[Fraction, Fraction], ...] | None:
        if self.sampler_kind in ("two-point", "finite-discrete"):
            return self.params
        return None


def _discrete(name: str, atoms: Sequence[tuple[Scalarish, Scalarish]]) -> DistributionPreset:
    pairs = tuple((as_scalar(v), as_scalar(p)) for v, p in atoms)
    if not pairs:
        raise MomentError("a discrete distribution needs at least one atom")
    if any(p <= 0 for _, p in pairs):
        raise MomentError("atom probabilities must be positive")
    if sum(p for _, p in pairs) != 1:
        raise MomentError("atom probabilities must sum to 1")
    kind = "two-point" if len(pairs) == 2 else "finite-discrete"
    return DistributionPreset(name, discrete_moments(pairs), kind, pairs)


def preset(name: str, *params: Scalarish) -> DistributionPreset:
    """Build a named distribution.

    ``exp1``; ``normal`` with (mu, sigma2); ``rademacher``; ``zero-two``;
    ``discrete`` with alternating value, probability arguments.
    """
    if name == "exp1":
        moments = MomentVector(tuple(Fraction(math.factorial(j)) for j in range(1, 7)))
        return DistributionPreset("exp1", moments, "exponential", (Fraction(1),))
    if name == "normal":
        if len(params) != 2:
            raise MomentError("normal needs (mu, sigma2)")
        mu, sigma2 = as_scalar(params[0]), as_scalar(params[1])
        if sigma2 <= 0:
            raise MomentError("normal needs sigma2 > 0")
        return DistributionPreset(
            f"normal:{format_rational(mu)}:{format_rational(sigma2)}",
            normal_moments(mu, sigma2),
            "normal",
            (mu, sigma2),
        )
    if name == "rademacher":
        return _discrete("rademacher", [(-1, Fraction(1, 2)), (1, Fraction(1, 2))])
    if name == "zero-two":
        return _discrete("zero-two", [(0, Fraction(1, 2)), (2, Fraction(1, 2))])
    if name == "discrete":
        if not params or len(params) % 2:
            raise MomentError("discrete needs value, probability pairs")
        atoms = list(zip(params[0::2], params[1::2]))
        label = ",".join(f"{format_rational(v)}:{format_rational(p)}" for v, p in atoms)
        return _discrete(f"discrete:{label}", atoms)
    raise MomentError(f"unknown distribution {name!r}")


def parse_dist(spec: str) -> DistributionPreset:
    """Parse ``exp1 | normal:mu:sigma2 | rademacher | zero-two | discrete:v1:p1,v2:p2,...``.

    The normal form takes the mean and the variance, both rational literals.
    """
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    if head == "normal":
        parts = rest.split(":")
        if len(parts) != 2:
            raise MomentError(f"expected normal:mu:sigma2, got {spec!r}")
        return preset("normal", parse_rational(parts[0]), parse_rational(parts[1]))
    if head == "discrete":
        flat: list[Fraction] = []
        for item in rest.split(","):
            v, sep, p = item.partition(":")
            if not sep:
                raise MomentError(f"discrete atom must be value:prob, got {item!r}")
            flat += [parse_rational(v), parse_rational(p)]
        return preset("discrete", *flat)
    if rest:
        raise MomentError(f"unexpected parameters in {spec!r}")
    return preset(head)


def parse_moments(spec: str) -> MomentVector:
    """Parse ``m1=1,m2=2,m3=6,m4=24[,m5=...,m6=...]``."""
    values: dict[int, Fraction] = {}
    for item in spec.split(","):
        key, sep, val = item.strip().partition("=")
        if not sep or not key.startswith("m") or not key[1:].isdigit():
            raise MomentError(f"bad moment assignment {item!r}")
        r = int(key[1:])
        if r in values:
            raise MomentError(f"m{r} given twice")
        values[r] = parse_rational(val)
    order = max(values)
    if sorted(values) != list(range(1, order + 1)) or order not in (2, 4, 6):
        raise MomentError("moments must be m1..mk for k in {2,4,6}")
    return MomentVector(tuple(values[r] for r in range(1, order + 1)))
