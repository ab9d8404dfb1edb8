from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dimform.dimension import (
    DIMENSIONLESS,
    Dimension,
    dim_is_dimensionless,
    dim_mul,
    dim_pow,
    render_dimension,
)

small = st.fractions(min_value=-6, max_value=6, max_denominator=6)
dims = st.lists(small, min_size=7, max_size=7).map(Dimension)

VELOCITY = Dimension((0, 0, 1, 0, 0, 0, -1))
TIME = Dimension((0, 0, 0, 0, 0, 0, 1))
LENGTH = Dimension((0, 0, 1, 0, 0, 0, 0))
FORCE = Dimension((0, 0, 1, 0, 1, 0, -2))
PRESSURE = Dimension((0, 0, -1, 0, 1, 0, -2))


def test_velocity_times_time_is_length():
    assert dim_mul(VELOCITY, TIME) == LENGTH


def test_force_times_length_is_energy():
    assert dim_mul(FORCE, LENGTH) == Dimension((0, 0, 2, 0, 1, 0, -2))


def test_identity_element():
    assert dim_mul(VELOCITY, DIMENSIONLESS) == VELOCITY


def test_pow_examples():
    assert dim_pow(LENGTH, 2) == Dimension((0, 0, 2, 0, 0, 0, 0))
    assert dim_pow(VELOCITY, 0) == DIMENSIONLESS


def test_fractional_pow_matches_componentwise_scaling():
    r = Fraction(3, 2)
    expected = Dimension([x * r for x in (0, 0, -1, 0, 1, 0, -2)])
    assert dim_pow(PRESSURE, r) == expected
    assert dim_pow(PRESSURE, "3/2").exponents == (0, 0, Fraction(-3, 2), 0, Fraction(3, 2), 0, -3)


def test_dimensionless_predicate():
    assert dim_is_dimensionless(DIMENSIONLESS)
    assert not dim_is_dimensionless(VELOCITY)
    assert dim_is_dimensionless(dim_mul(VELOCITY, dim_pow(VELOCITY, -1)))


def test_keyword_construction_and_aliases():
    assert Dimension(L=1, T=-1) == VELOCITY
    assert Dimension(Theta=1) == Dimension(Θ=1)
    with pytest.raises(KeyError):
        Dimension(X=1)


def test_float_exponents_rejected():
    with pytest.raises(TypeError):
        dim_pow(LENGTH, 0.5)
    with pytest.raises(TypeError):
        Dimension(L=True)


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        Dimension((1, 2, 3))


def test_rendering():
    assert render_dimension(FORCE) == "L^1 M^1 T^-2"
    assert render_dimension(DIMENSIONLESS) == "1"
    assert str(dim_pow(PRESSURE, Fraction(1, 2))) == "L^(-1/2) M^(1/2) T^-1"


def test_immutable():
    with pytest.raises(AttributeError):
        VELOCITY._exponents = ()


@given(dims, dims, dims)
def test_group_axioms(a, b, c):
    assert dim_mul(a, b) == dim_mul(b, a)
    assert dim_mul(dim_mul(a, b), c) == dim_mul(a, dim_mul(b, c))
    assert dim_mul(a, DIMENSIONLESS) == a
    assert dim_mul(a, dim_pow(a, -1)) == DIMENSIONLESS


@given(dims, small, small)
def test_pow_composes(a, p, q):
    assert dim_pow(dim_pow(a, p), q) == dim_pow(a, p * q)


@given(st.integers(-10**6, 10**6).filter(bool), st.integers(-10**6, 10**6).filter(bool))
def test_rational_round_trip(a, b):
    x = Fraction(a, b) * Fraction(b, a)
    assert x == 1 and x.denominator == 1
