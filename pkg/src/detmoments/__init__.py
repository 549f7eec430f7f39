"""Exact moments of random determinants and random Gram determinants."""

from .closedform import (
    MomentQuery,
    closed_form,
    f2_gram,
    f2_square,
    f4_gram,
    f4_square,
    f4_sym_gram,
    f4_sym_square,
    f6_cen_square,
    f6_sym_square,
    simplex_volume_moment,
)
from .moments import MomentVector, parse_dist, parse_moments, preset

__all__ = [
    "MomentQuery",
    "MomentVector",
    "closed_form",
    "f2_gram",
    "f2_square",
    "f4_gram",
    "f4_square",
    "f4_sym_gram",
    "f4_sym_square",
    "f6_cen_square",
    "f6_sym_square",
    "parse_dist",
    "parse_moments",
    "preset",
    "simplex_volume_moment",
]
