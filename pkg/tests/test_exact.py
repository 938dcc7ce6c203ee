from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from grasschar import exact
from grasschar.errors import DivisionByZero, IncompatibleMonomials, ParseError
from grasschar.exact import ExactScalar

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10])
pi_powers = st.integers(min_value=-4, max_value=8)
scalars = st.builds(ExactScalar, rationals, radicands, pi_powers)
nonzero = scalars.filter(lambda x: not x.is_zero())


def test_canonical_square_part():
    assert ExactScalar.sqrt(8) == ExactScalar(2, 2)
    assert ExactScalar.sqrt(Fraction(3, 2)) == ExactScalar(Fraction(1, 2), 6)
    assert ExactScalar(0, 5, 3) == exact.ZERO
    assert ExactScalar(3, 1, 0).is_rational()


@pytest.mark.parametrize(
    "value, text",
    [
        (ExactScalar(2, 1, 1), "2 * pi"),
        (ExactScalar(1, 1, -1), "pi^-1"),
        (ExactScalar(-1, 2, 0), "-sqrt(2)"),
        (ExactScalar(Fraction(16, 45), 1, 6), "16/45 * pi^6"),
        (ExactScalar(Fraction(1, 2), 6, 3), "1/2 * sqrt(6) * pi^3"),
        (exact.ZERO, "0"),
        (ExactScalar(-3), "-3"),
    ],
)
def test_render(value, text):
    assert exact.render(value) == text
    assert exact.parse(text) == value


def test_parse_accepts_rational_radicand():
    assert exact.parse("sqrt(3/2) * pi^3") == exact.parse("1/2 * sqrt(6) * pi^3")


@pytest.mark.parametrize("text", ["", "pi^", "sqrt(-2)", "2 ** pi", "e"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        exact.parse(text)


def test_addition_needs_same_monomial():
    with pytest.raises(IncompatibleMonomials):
        ExactScalar.pi() + ExactScalar(1)
    assert ExactScalar.pi() + exact.ZERO == ExactScalar.pi()
    assert ExactScalar(2, 3) - ExactScalar(2, 3) == exact.ZERO


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        exact.ONE / exact.ZERO


@given(scalars)
def test_render_parse_round_trip(x):
    assert exact.parse(exact.render(x)) == x


@given(scalars, scalars, scalars)
def test_multiplication_is_associative_and_commutative(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@given(nonzero)
def test_inverse(x):
    assert x * x.inverse() == exact.ONE


@given(rationals, rationals, radicands, pi_powers)
def test_distributive_on_a_monomial(a, b, r, k):
    x, y, z = ExactScalar(a, r, k), ExactScalar(b, r, k), ExactScalar(a + 1, 2, 1)
    assert (x + y) * z == x * z + y * z


@given(nonzero, st.integers(min_value=-3, max_value=3))
def test_powers(x, n):
    expected = exact.ONE
    for _ in range(abs(n)):
        expected = expected * x
    if n < 0:
        expected = expected.inverse()
    assert x**n == expected


@given(scalars)
def test_float_agrees(x):
    import math

    assert math.isclose(float(x), float(x.coeff) * math.sqrt(x.radicand) * math.pi**x.pi_pow, rel_tol=1e-12)
