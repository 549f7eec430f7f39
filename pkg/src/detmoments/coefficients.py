"""Polynomial coefficients of the full fourth-moment generating functions.

``square_numerator_coeffs`` / ``gram_numerator_coeffs`` are the numerator coefficients of F4(t)
and F4(t, w); ``square_taylor_coeffs`` and ``gram_*taylor_coeffs`` are the Taylor-side coefficients used by the
closed-form sums. Both families take (m1, mu2, mu3).
"""

from __future__ import annotations

from fractions import Fraction

from .moments import CentralMoments


def square_numerator_coeffs(m1: Fraction, c: CentralMoments) -> tuple[Fraction, ...]:
    """(p_1, ..., p_6)."""
    u2, u3 = c.mu2, c.mu3
    p1 = m1**4 + 6 * m1**2 * u2 - 2 * u2**2 + 4 * m1 * u3
    p2 = (
        7 * m1**4 * u2**2
        - 6 * m1**2 * u2**3
        + u2**4
        + 12 * m1**3 * u2 * u3
        - 8 * m1 * u2**2 * u3
        + 6 * m1**2 * u3**2
    )
    p3 = (
        2
        * m1
        * (
            2 * m1**3 * u2**4
            - 6 * m1**2 * u2**3 * u3
            + 2 * u2**4 * u3
            + 3 * m1**3 * u2 * u3**2
            - 6 * m1 * u2**2 * u3**2
            + 2 * m1**2 * u3**3
        )
    )
    p4 = m1**2 * u3**2 * (m1**2 * u3**2 - 6 * m1**2 * u2**3 + 6 * u2**4 - 8 * m1 * u2**2 * u3)
    p5 = 2 * m1**3 * u2**2 * u3**3 * (2 * u2**2 - m1 * u3)
    p6 = m1**4 * u2**4 * u3**4
    return p1, p2, p3, p4, p5, p6


def gram_numerator_coeffs(m1: Fraction, c: CentralMoments) -> tuple[Fraction, ...]:
    """(p~_1, ..., p~_4) of the Gram generating function."""
    u2, u3 = c.mu2, c.mu3
    return (
        m1**2 + 2 * u2,
        5 * m1**2 * u2**2 + 4 * m1 * u2 * u3 - 2 * u2**3,
        2 * m1**2 * u2**4 - 4 * m1 * u2**3 * u3 + 2 * m1**2 * u2 * u3**2,
        -2 * m1**2 * u2**3 * u3**2,
    )


def square_taylor_coeffs(m1: Fraction, c: CentralMoments, *, qm2_uses_raw_m3: bool = False, m3: Fraction | None = None) -> dict[int, Fraction]:
    """q_i for i = -2..4; requires mu2 != 0.

    The printed q_{-2} has m3**4 in its numerator while every sibling uses
    mu3; ``qm2_uses_raw_m3=True`` (with ``m3``) selects the literal reading,
    which only exists so tests can show it disagrees with brute force.
    """
    u2, u3 = c.mu2, c.mu3
    if u2 == 0:
        raise ZeroDivisionError("q coefficients need mu2 != 0")
    top = m3 if qm2_uses_raw_m3 else u3
    if qm2_uses_raw_m3 and m3 is None:
        raise ValueError("literal q_{-2} reading needs m3")
    d8, d5, d2 = u2**8, u2**5, u2**2
    return {
        -2: m1**4 * top**4 / d8,
        -1: -4 * m1**3 * u3**3 * (u2**2 + m1 * u3) / d8,
        0: 6 * m1**2 * u3**2 * (u2**4 + 2 * m1 * u2**2 * u3 + m1**2 * u3**2 - m1**2 * u2**3) / d8,
        1: 2
        * m1
        * (
            6 * m1**2 * u2**5 * u3
            - 2 * m1**3 * u2**6
            - 2 * u2**6 * u3
            + 9 * m1**3 * u2**3 * u3**2
            - 6 * m1 * u2**4 * u3**2
            - 6 * m1**2 * u2**2 * u3**3
            - 2 * m1**3 * u3**4
        )
        / d8,
        2: 1
        + m1
        * (
            19 * m1**3 * u2**6
            - 6 * m1 * u2**7
            - 24 * m1**2 * u2**5 * u3
            + 4 * u2**6 * u3
            - 18 * m1**3 * u2**3 * u3**2
            + 6 * m1 * u2**4 * u3**2
            + 4 * m1**2 * u2**2 * u3**3
            + m1**3 * u3**4
        )
        / d8,
        3: 3 * m1**2 * (2 * u2**4 - 9 * m1**2 * u2**3 + 4 * m1 * u2**2 * u3 + 2 * m1**2 * u3**2) / d5,
        4: 12 * m1**4 / d2,
    }


def gram_taylor_coeffs(m1: Fraction, c: CentralMoments) -> dict[int, Fraction]:
    """q~_i (linear in n - p); zero outside i = 0..3."""
    u2, u3 = c.mu2, c.mu3
    d5 = u2**5
    out = {i: Fraction(0) for i in range(-2, 5)}
    out[0] = -2 * m1**4 * u3**2 / d5
    out[1] = 2 * m1**3 * (2 * u2**2 * u3 + 3 * m1 * u3**2 - m1 * u2**3) / d5
    out[2] = m1**2 * (3 * m1**2 * u2**3 - 2 * u2**4 - 8 * m1 * u2**2 * u3 - 6 * m1**2 * u3**2) / d5
    out[3] = m1**2 * (2 * u2**4 + 4 * m1 * u2**2 * u3 + 2 * m1**2 * u3**2 - m1**2 * u2**3) / d5
    return out


def gram_mixed_taylor_coeffs(m1: Fraction, c: CentralMoments) -> dict[int, Fraction]:
    """q~~_i (multiplies (n-p)(n-p+7)); nonzero only for i = 2, 3, 4."""
    r = m1**4 / c.mu2**2
    out = {i: Fraction(0) for i in range(-2, 5)}
    out[2], out[3], out[4] = r, -2 * r, r
    return out
