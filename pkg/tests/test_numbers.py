from fractions import Fraction

import numpy as np
import pytest

from padic.mock import random_padic
from padic.numbers import (
    INFINITE_VALUATION,
    PAdicFormatError,
    PAdicRational,
    PrimeMismatchError,
    character,
    digits,
    frac,
    norm,
    parse_padic,
    valuation,
)


def q(p, value):
    return PAdicRational.from_fraction(p, Fraction(value))


@pytest.mark.parametrize(
    "p, value, expected",
    [(2, 8, 3), (2, Fraction(3, 2), -1), (3, 0, INFINITE_VALUATION), (5, Fraction(7, 25), -2)],
)
def test_valuation(p, value, expected):
    assert valuation(q(p, value)) == expected


@pytest.mark.parametrize(
    "p, value, expected",
    [(5, 5, Fraction(1, 5)), (2, 0, Fraction(0)), (2, Fraction(3, 4), Fraction(4))],
)
def test_norm(p, value, expected):
    assert norm(q(p, value)) == expected


@pytest.mark.parametrize(
    "value, expected",
    [(Fraction(3, 4), Fraction(3, 4)), (Fraction(5, 2), Fraction(1, 2)), (Fraction(-1, 2), Fraction(1, 2)), (7, 0)],
)
def test_frac(value, expected):
    assert frac(q(2, value)) == expected


@pytest.mark.parametrize(
    "value, expected",
    [(Fraction(1, 2), -1), (1, 1), (Fraction(1, 4), 1j)],
)
def test_character(value, expected):
    assert abs(character(q(2, value)) - expected) < 1e-12


def test_reduced_form_is_canonical():
    assert PAdicRational(2, 4, 2) == PAdicRational(2, 1, 0)
    assert PAdicRational(3, 0, 5) == PAdicRational.zero(3)
    x = PAdicRational(2, 12, 3)
    assert (x.mantissa, x.exponent) == (3, 1)


def test_arithmetic_is_exact():
    x, y = q(3, Fraction(2, 9)), q(3, Fraction(-5, 3))
    assert (x + y).to_fraction() == Fraction(2, 9) - Fraction(5, 3)
    assert (x * y).to_fraction() == Fraction(2, 9) * Fraction(-5, 3)
    assert (x - x).is_zero()
    assert (2 + x).to_fraction() == 2 + Fraction(2, 9)
    assert x.shift(2).to_fraction() == 2


def test_from_fraction_rejects_foreign_denominators():
    with pytest.raises(PAdicFormatError):
        PAdicRational.from_fraction(2, Fraction(1, 3))


def test_mixing_primes_raises():
    with pytest.raises(PrimeMismatchError):
        q(2, 1) + q(3, 1)


def test_parse_padic():
    assert parse_padic("3/2^2", 2) == q(2, Fraction(3, 4))
    assert parse_padic("-7", 5) == q(5, -7)
    assert str(parse_padic("3/2^2", 2)) == "3/2^2"
    with pytest.raises(PAdicFormatError):
        parse_padic("3/3^2", 2)
    with pytest.raises(PAdicFormatError):
        parse_padic("three quarters", 2)


def test_digits_of_negative_number_have_periodic_tail():
    assert digits(q(2, Fraction(-1, 2)), 4) == [(-1, 1), (0, 1), (1, 1), (2, 1)]
    assert digits(q(3, 5), 3) == [(0, 2), (1, 1), (2, 0)]


def test_digits_recover_fractional_part(rng):
    for _ in range(200):
        x = random_padic(rng, 3, (-4, 4))
        below = [d * Fraction(3) ** pos for pos, d in digits(x, x.exponent) if pos < 0]
        assert sum(below, Fraction(0)) == frac(x)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_strong_triangle_inequality(rng, p):
    for _ in range(2000):
        x = random_padic(rng, p, (-4, 4), zero_rate=0.05)
        y = random_padic(rng, p, (-4, 4), zero_rate=0.05)
        nx, ny, nsum = norm(x), norm(y), norm(x + y)
        assert nsum <= max(nx, ny)
        if nx != ny:
            assert nsum == max(nx, ny)
        assert norm(x * y) == nx * ny


def test_character_is_additive(rng):
    for _ in range(500):
        x, y = random_padic(rng, 5, (-3, 3)), random_padic(rng, 5, (-3, 3))
        assert abs(character(x) * character(y) - character(x + y)) < 1e-12
        assert np.isclose(abs(character(x)), 1.0)
