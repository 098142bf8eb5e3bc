from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.core.errors import DivisionError, SeriesDomainError
from app.core.polyring import Poly
from app.core.series import (
    TruncSeries,
    series_derivative,
    series_div,
    series_exp,
    series_integrate,
    series_mul,
    shift_down,
)
from conftest import X, rationals, small_ints, unipolys


def Q(coeffs, ord):
    return TruncSeries(coeffs, ord, ())


def test_padding_and_truncation():
    assert Q([1, 2], 4).coeffs == (1, 2, 0, 0)
    assert Q([1, 2, 3, 4], 2).coeffs == (1, 2)


def test_product_truncates_to_smaller_order():
    product = series_mul(Q([1, 1], 3), Q([1, 1, 1, 1], 5))
    assert product.ord == 3
    assert product.coeffs == (1, 2, 2)


def test_geometric_series():
    assert series_div(Q([1], 5), Q([1, -1], 5)).coeffs == (1, 1, 1, 1, 1)


def test_division_by_zero_constant_term():
    with pytest.raises(DivisionError):
        series_div(Q([1], 3), Q([0, 1], 3))


def test_division_needs_rational_constant_term():
    a = TruncSeries([1], 3, X)
    b = TruncSeries([Poly([0, 1], X)], 3, X)
    with pytest.raises(DivisionError):
        series_div(a, b)


def test_exp_of_t():
    e = series_exp(Q([0, 1], 6))
    assert e.coeffs == tuple(Fraction(1, factorial(k)) for k in range(6))


def test_exp_of_zero_is_one():
    assert series_exp(Q([], 4)).coeffs == (1, 0, 0, 0)


def test_exp_rejects_nonzero_constant():
    with pytest.raises(SeriesDomainError):
        series_exp(Q([1, 1], 3))


def test_integrate_then_differentiate():
    a = Q([3, 4, 6], 3)
    integral = series_integrate(a)
    assert integral.ord == 4
    assert integral.coeffs == (0, 3, 2, 2)
    assert series_derivative(integral) == a


def test_polynomial_coefficients():
    x = Poly([0, 1], X)
    a = TruncSeries([1, x], 3, X)
    square = a * a
    assert square.coeffs == (Poly([1], X), 2 * x, x * x)


def test_shift_down():
    head, rest = shift_down(Q([5, 1, 2, 3], 4), 1)
    assert head == [5]
    assert rest == Q([1, 2, 3], 3)


def test_mixing_coefficient_rings_fails():
    with pytest.raises(DivisionError):
        Q([1], 2) + TruncSeries([1], 2, X)


series = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.lists(rationals, min_size=n, max_size=n).map(lambda cs: Q(cs, len(cs)))
)


@given(series, st.lists(small_ints, min_size=6, max_size=6))
def test_division_undoes_multiplication(a, tail):
    b = Q([1] + tail, a.ord)
    assert series_div(a, b) * b == a


@given(st.lists(rationals, max_size=5), st.lists(rationals, max_size=5))
def test_exp_turns_sums_into_products(u, v):
    a, b = Q([0] + u, 6), Q([0] + v, 6)
    assert series_exp(a + b) == series_exp(a) * series_exp(b)


@given(st.lists(rationals, max_size=6))
def test_exp_derivative_law(tail):
    a = Q([0] + tail, 7)
    e = series_exp(a)
    assert series_derivative(e) == series_derivative(a) * e


@given(st.lists(unipolys(max_size=3), max_size=4))
def test_exp_derivative_law_over_polynomials(tail):
    a = TruncSeries([0] + tail, 5, X)
    e = series_exp(a)
    assert series_derivative(e) == series_derivative(a) * e
