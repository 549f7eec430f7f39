from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from detmoments.moments import (
    CentralMoments,
    MomentError,
    MomentVector,
    central_from_raw,
    discrete_moments,
    normal_moments,
    parse_dist,
    parse_moments,
    preset,
)

from conftest import rationals


def test_central_moments_exp1():
    assert central_from_raw(MomentVector.of(1, 2, 6, 24)) == CentralMoments(1, 2, 9)


def test_central_moments_zero_two():
    assert central_from_raw(MomentVector.of(1, 2, 4, 8)) == CentralMoments(1, 0, 1)


def test_central_moments_of_centered_input():
    m = MomentVector.of(0, Fraction(3, 2), 5, 7)
    assert central_from_raw(m) == CentralMoments(Fraction(3, 2), 5, 7)


def test_central_moments_need_order_four():
    with pytest.raises(MomentError):
        central_from_raw(MomentVector.of(1, 2))


def test_presets():
    assert preset("exp1").moments[4] == 24
    assert preset("rademacher").moments.m == (0, 1, 0, 1, 0, 1)
    assert preset("zero-two").moments.m == (1, 2, 4, 8, 16, 32)
    m = preset("normal", 0, 1).moments
    assert (m[2], m[4], m[6]) == (1, 3, 15)


@pytest.mark.parametrize(
    "args",
    [("normal", 0, 0), ("normal", 0, -1), ("discrete", 1, Fraction(1, 2)), ("discrete", 1, 2, 3, -1), ("cauchy",)],
)
def test_preset_rejects_bad_parameters(args):
    with pytest.raises(MomentError):
        preset(*args)


@pytest.mark.parametrize("mu,s2", [(0, 1), (Fraction(1, 2), 2), (-3, Fraction(1, 5)), (Fraction(2, 7), Fraction(9, 4))])
def test_normal_central_moments(mu, s2):
    assert central_from_raw(preset("normal", mu, s2).moments) == CentralMoments(s2, 0, 3 * s2**2)


@given(
    st.lists(st.tuples(rationals(), st.integers(1, 5)), min_size=1, max_size=4),
    rationals(),
)
def test_central_moments_are_translation_invariant(raw_atoms, shift):
    total = sum(w for _, w in raw_atoms)
    atoms = [(v, Fraction(w, total)) for v, w in raw_atoms]
    moved = [(v + shift, p) for v, p in atoms]
    assert central_from_raw(discrete_moments(atoms)) == central_from_raw(discrete_moments(moved))


def test_as_raw_round_trip():
    c = CentralMoments(Fraction(2), Fraction(-1, 3), Fraction(5))
    assert central_from_raw(c.as_raw()) == c


def test_moment_vector_order_and_access():
    m = MomentVector.of(1, 2, 3, 4)
    assert m[0] == 1
    assert m.order == 4
    with pytest.raises(MomentError):
        m[5]
    with pytest.raises(MomentError):
        MomentVector.of(1, 2, 3)
    with pytest.raises(MomentError):
        m.require(6)


def test_validation_is_opt_in():
    m = MomentVector.of(2, 1, 0, 0)
    with pytest.raises(MomentError):
        m.validate()
    MomentVector.of(1, 2, 0, 0).validate()


def test_symmetry_flags():
    assert preset("rademacher").moments.is_symmetric()
    assert MomentVector.of(0, 1, 2, 3).is_centered()
    assert not MomentVector.of(0, 1, 2, 3).is_symmetric()


def test_parse_moments():
    assert parse_moments("m1=1,m2=2,m3=6,m4=24") == MomentVector.of(1, 2, 6, 24)
    assert parse_moments("m1=0, m2=1/2") == MomentVector.of(0, Fraction(1, 2))
    for bad in ("m1=1,m3=2", "m1=1,m2=2,m3=1", "x=1", "m1=1,m1=2", "m1=0.5,m2=1"):
        with pytest.raises(ValueError):
            parse_moments(bad)


def test_parse_dist():
    assert parse_dist("exp1").name == "exp1"
    assert parse_dist("normal:0/1:1").moments == normal_moments(0, 1)
    d = parse_dist("discrete:0:2/3,3:1/3")
    assert d.atoms == ((0, Fraction(2, 3)), (3, Fraction(1, 3)))
    assert d.moments[1] == 1
    with pytest.raises(MomentError):
        parse_dist("normal:0")
    with pytest.raises(MomentError):
        parse_dist("rademacher:1")
