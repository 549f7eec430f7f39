from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from detmoments import closedform as cf
from detmoments.algebra import binomial
from detmoments.combinatorics import (
    MAX_ENUMERATION,
    derangement_cycle_profile,
    derangement_weight_sum,
    egf_check,
    f4_sym_via_tables,
    iter_derangement_cycles,
    selection_count,
)
from detmoments.moments import MomentVector, preset

DERANGEMENTS = [1, 0, 1, 2, 9, 44, 265, 1854, 14833, 133496]


def _cycles(perm):
    seen, count = set(), 0
    for start in range(len(perm)):
        if start not in seen:
            count += 1
            i = start
            while i not in seen:
                seen.add(i)
                i = perm[i]
    return count


@pytest.mark.parametrize("j", range(7))
def test_profile_matches_filtered_permutations(j):
    want: dict[int, int] = {}
    for perm in permutations(range(j)):
        if all(perm[i] != i for i in range(j)):
            c = _cycles(perm)
            want[c] = want.get(c, 0) + 1
    if j == 0:
        want = {0: 1}
    assert derangement_cycle_profile(j).counts == want


def test_profile_examples():
    assert derangement_cycle_profile(0).counts == {0: 1}
    assert derangement_cycle_profile(2).counts == {1: 1}
    assert derangement_cycle_profile(4).counts == {1: 6, 2: 3}


def test_derangement_numbers():
    assert [derangement_cycle_profile(j).total for j in range(10)] == DERANGEMENTS
    assert sum(1 for _ in iter_derangement_cycles(5)) == 44


def test_enumeration_guard():
    with pytest.raises(ValueError):
        derangement_cycle_profile(MAX_ENUMERATION + 1)
    with pytest.raises(ValueError):
        derangement_cycle_profile(-1)


def test_weight_sums():
    assert derangement_weight_sum(2, 3) == 3
    assert derangement_weight_sum(4, 3) == 45
    assert [derangement_weight_sum(j, 1) for j in range(8)] == DERANGEMENTS[:8]


@pytest.mark.parametrize("u", [1, 2, 3])
def test_egf(u):
    rep = egf_check(9, u)
    assert rep.holds
    assert rep.rows[0][1:] == (1, 1)


def test_egf_rows():
    assert egf_check(4, 3).rows[4][1:] == (45, 45)
    assert egf_check(3, 1).rows[3][1:] == (2, 2)


def test_egf_rejects_u():
    with pytest.raises(ValueError):
        egf_check(3, 5)


def test_tables_examples():
    assert f4_sym_via_tables(2, preset("rademacher").moments) == 8
    assert f4_sym_via_tables(3, MomentVector.of(0, 1, 0, 3)) == 360
    assert f4_sym_via_tables(0, MomentVector.of(0, 5, 0, 2)) == 1


@pytest.mark.parametrize(
    "m", [MomentVector.of(0, 1, 0, 3), MomentVector.of(0, Fraction(2, 3), 0, Fraction(5, 7)), MomentVector.of(0, 2, 0, 9)], ids=str
)
def test_tables_match_closed_form(m):
    assert all(f4_sym_via_tables(n, m) == cf.f4_sym_square(n, m) for n in range(9))


def test_selection_count_examples():
    assert selection_count("c", 2, 1, 0) == 2
    assert selection_count("c", 5, 5, 5) == 1
    assert selection_count("d", 2, 1, 1) == 2
    with pytest.raises(ValueError):
        selection_count("x", 2, 1, 1)


@given(st.integers(0, 8), st.data())
def test_overlap_counts_sum_to_pairs(n, data):
    p = data.draw(st.integers(0, n))
    assert sum(selection_count("c", n, p, q) for q in range(p + 1)) == binomial(n, p) ** 2


@given(st.integers(1, 8), st.data())
def test_mixed_size_counts_sum_to_pairs(n, data):
    p = data.draw(st.integers(1, n))
    assert sum(selection_count("d", n, p, q) for q in range(p + 1)) == binomial(n, p) * binomial(n, p + 1)
    assert sum(selection_count("e", n, p, q) for q in range(p + 1)) == binomial(n, p + 1) * binomial(n, p - 1)
