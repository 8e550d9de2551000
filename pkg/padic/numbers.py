"""
Exact arithmetic on the ring Z[1/p] of p-adic numbers with finitely many
digits after the p-adic point.

A value is stored as ``mantissa * p**(-exponent)`` with a nonnegative
exponent. Digit expansions are derived views: nonnegative mantissas give
terminating expansions, negative ones give expansions whose tail is the digit
``p - 1`` repeated forever.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "INFINITE_VALUATION",
    "PAdicFormatError",
    "PAdicRational",
    "PrimeMismatchError",
    "character",
    "digits",
    "frac",
    "norm",
    "parse_padic",
    "valuation",
]

INFINITE_VALUATION = math.inf

_TEXT_PATTERN = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*\^\s*(\d+)\s*)?$")


class PAdicFormatError(ValueError):
    """Raised when a textual p-adic value cannot be parsed."""


class PrimeMismatchError(ValueError):
    """Raised when objects built over different primes are combined."""


def _integer_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


@dataclass(frozen=True)
class PAdicRational:
    """
    Exact element ``mantissa / prime**exponent`` of Z[1/p].

    The stored form is reduced: the exponent is minimal, so a positive
    exponent implies the mantissa is not divisible by the prime, and zero is
    always ``(0, 0)``.
    """

    prime: int
    mantissa: int
    exponent: int = 0

    def __post_init__(self) -> None:
        if self.prime < 2:
            raise ValueError(f"prime must be >= 2, got {self.prime}")
        if self.exponent < 0:
            raise ValueError("exponent must be nonnegative; scale the mantissa instead")
        m, e = self.mantissa, self.exponent
        if m == 0:
            e = 0
        while e > 0 and m % self.prime == 0:
            m //= self.prime
            e -= 1
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    # ----------------------------------------------------------- constructors
    @classmethod
    def zero(cls, prime: int) -> "PAdicRational":
        return cls(prime, 0, 0)

    @classmethod
    def power(cls, prime: int, k: int) -> "PAdicRational":
        """Return ``prime**k`` for any integer ``k``."""
        if k >= 0:
            return cls(prime, prime**k, 0)
        return cls(prime, 1, -k)

    @classmethod
    def from_fraction(cls, prime: int, value: Fraction | int) -> "PAdicRational":
        """
        Convert a rational whose denominator is a power of ``prime``.

        Raises
        ------
        PAdicFormatError
            If the denominator has a prime factor other than ``prime``.
        """
        value = Fraction(value)
        den = value.denominator
        e = 0
        while den % prime == 0:
            den //= prime
            e += 1
        if den != 1:
            raise PAdicFormatError(f"{value} is not an element of Z[1/{prime}]")
        return cls(prime, value.numerator, e)

    # ------------------------------------------------------------- arithmetic
    def _check(self, other: "PAdicRational") -> None:
        if self.prime != other.prime:
            raise PrimeMismatchError(f"cannot combine {self.prime}-adic and {other.prime}-adic values")

    def _coerce(self, other: object) -> "PAdicRational":
        if isinstance(other, PAdicRational):
            self._check(other)
            return other
        if isinstance(other, int):
            return PAdicRational(self.prime, other, 0)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "PAdicRational":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = max(self.exponent, other.exponent)
        p = self.prime
        m = self.mantissa * p ** (e - self.exponent) + other.mantissa * p ** (e - other.exponent)
        return PAdicRational(p, m, e)

    __radd__ = __add__

    def __neg__(self) -> "PAdicRational":
        return PAdicRational(self.prime, -self.mantissa, self.exponent)

    def __sub__(self, other: object) -> "PAdicRational":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "PAdicRational":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: object) -> "PAdicRational":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PAdicRational(self.prime, self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def shift(self, k: int) -> "PAdicRational":
        """Multiply by ``prime**k``."""
        return self * PAdicRational.power(self.prime, k)

    # ------------------------------------------------------------------ views
    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, self.prime**self.exponent)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.mantissa)
        return f"{self.mantissa}/{self.prime}^{self.exponent}"


def parse_padic(text: str, prime: int) -> PAdicRational:
    """
    Parse the textual encoding ``"m/p^e"`` (or a bare integer ``"m"``).

    Raises
    ------
    PAdicFormatError
        On malformed text or when the base in the text differs from ``prime``.
    """
    match = _TEXT_PATTERN.match(str(text))
    if match is None:
        raise PAdicFormatError(f"cannot parse p-adic value {text!r}; expected 'm/p^e'")
    mantissa = int(match.group(1))
    if match.group(2) is None:
        return PAdicRational(prime, mantissa, 0)
    base, exponent = int(match.group(2)), int(match.group(3))
    if base != prime:
        raise PAdicFormatError(f"value {text!r} is written in base {base}, expected {prime}")
    return PAdicRational(prime, mantissa, exponent)


def valuation(x: PAdicRational) -> int | float:
    """Return γ with ``|x|_p = p**(-γ)``; :data:`INFINITE_VALUATION` for zero."""
    if x.mantissa == 0:
        return INFINITE_VALUATION
    return _integer_valuation(x.mantissa, x.prime) - x.exponent


def norm(x: PAdicRational) -> Fraction:
    """Exact p-adic norm ``|x|_p``."""
    v = valuation(x)
    if v == INFINITE_VALUATION:
        return Fraction(0)
    return Fraction(x.prime) ** (-int(v))


def frac(x: PAdicRational) -> Fraction:
    """p-adic fractional part ``{x}_p`` in ``[0, 1)``."""
    modulus = x.prime**x.exponent
    return Fraction(x.mantissa % modulus, modulus)


def character(x: PAdicRational) -> complex:
    """Additive character ``χ(x) = exp(2πi {x}_p)``."""
    return complex(np.exp(2j * np.pi * float(frac(x))))


def digits(x: PAdicRational, count: int) -> list[tuple[int, int]]:
    """
    First ``count`` digits of the p-adic expansion as ``(position, digit)``.

    Positions start at ``-exponent``; negative mantissas yield the periodic
    ``p - 1`` tail, so the list always has ``count`` entries.
    """
    p = x.prime
    out: list[tuple[int, int]] = []
    m = x.mantissa
    for i in range(count):
        out.append((i - x.exponent, m % p))
        m //= p
    return out
