from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from liouvillian_ep.coeff import Coeff, I, conj, format_scalar, sqrt, square_free_split

from conftest import small_fractions


def test_sqrt_products_stay_exact():
    assert sqrt(2) * sqrt(5) == sqrt(10)
    assert sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt(Fraction(-1, 2)) == sqrt(2) * I / 2


def test_inverse_in_multiquadratic_field():
    x = 3 - sqrt(5) + I * sqrt(2)
    assert x * (1 / x) == 1


def test_square_free_split():
    assert square_free_split(12) == (2, 3)
    assert square_free_split(7) == (1, 7)


def test_format_and_conjugate():
    assert format_scalar(Fraction(-1, 2)) == "-1/2"
    assert format_scalar(-I) == "-i"
    assert conj(I * sqrt(5)) == -I * sqrt(5)
    assert complex(1 + I) == 1 + 1j


@given(small_fractions, small_fractions, st.integers(1, 30))
def test_field_axioms_with_radicals(a, b, k):
    x = a + b * sqrt(k)
    y = b - a * I * sqrt(k + 1)
    assert (x + y) - y == x
    assert x * y == y * x
    if x != 0:
        assert (y / x) * x == y


@given(small_fractions)
def test_rational_values_collapse_to_fraction(a):
    v = (a + sqrt(3)) - sqrt(3)
    assert isinstance(v, Fraction) and v == a


def test_float_fallback():
    assert abs(complex(sqrt(2.0)) - 2 ** 0.5) < 1e-15
    assert isinstance(Coeff.of(Fraction(1, 3)) * 0.5, complex)
