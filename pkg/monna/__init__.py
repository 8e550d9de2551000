"""
The p-adic change of variables ``ρ: Q_p -> R_+`` (digit reversal).

``ρ(Σ a_i p**i) = Σ a_i p**(-i-1)``. Outputs are exact fractions. Negative
elements of Z[1/p] have a tail of ``p - 1`` digits; their image is computed
in closed form, never by truncating the expansion.

``ρ`` is not injective: a p-ary rational has two preimages, one with a
terminating expansion. :func:`rho_section` always returns the terminating
one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from padic.balls import Ball, BallRelation, ball_relation
from padic.mock import random_member
from padic.numbers import PAdicRational, norm

__all__ = [
    "Interval",
    "MeasureCheck",
    "MonnaError",
    "ball_image",
    "ball_image_of",
    "holder_gap",
    "image_partition_check",
    "measure_preservation_check",
    "rho",
    "rho_nat",
    "rho_nat_inverse",
    "rho_section",
]


class MonnaError(ValueError):
    """Raised on inputs outside the domain of a Monna-map operation."""


@dataclass(frozen=True)
class Interval:
    """Half-open interval ``[left, left + length)``."""

    left: Fraction
    length: Fraction

    def __post_init__(self) -> None:
        if self.length <= 0:
            raise MonnaError(f"interval length must be positive, got {self.length}")

    @property
    def right(self) -> Fraction:
        return self.left + self.length

    def contains(self, t: Fraction) -> bool:
        return self.left <= t < self.right

    def contains_closed(self, t: Fraction) -> bool:
        return self.left <= t <= self.right

    def overlap_length(self, other: "Interval") -> Fraction:
        return max(Fraction(0), min(self.right, other.right) - max(self.left, other.left))

    def to_json(self) -> dict[str, str]:
        return {"left": str(self.left), "right": str(self.right), "length": str(self.length)}


def _rho_of_natural(n: int, p: int) -> Fraction:
    total = Fraction(0)
    scale = Fraction(1, p)
    while n:
        n, d = divmod(n, p)
        total += d * scale
        scale /= p
    return total


def rho(x: PAdicRational) -> Fraction:
    """Exact digit-reversal image ``ρ(x)``."""
    p = x.prime
    m = x.mantissa
    if m >= 0:
        base = _rho_of_natural(m, p)
    else:
        # m = (p**L - |m|) + Σ_{i>=L} (p-1) p**i, the tail maps onto p**(-L)
        length = 1
        while p**length <= -m:
            length += 1
        base = _rho_of_natural(p**length + m, p) + Fraction(1, p**length)
    return base * p**x.exponent


def _is_canonical_fraction(n: PAdicRational) -> bool:
    return 0 <= n.mantissa < n.prime**n.exponent or n.is_zero()


def rho_nat(n: PAdicRational) -> int:
    """
    Bijection ``Q_p/Z_p -> N`` on canonical representatives ``0 <= n < 1``.

    Raises
    ------
    MonnaError
        If ``n`` is not the canonical representative of its class.
    """
    if not _is_canonical_fraction(n):
        raise MonnaError(f"{n} is not a canonical representative of Q_{n.prime}/Z_{n.prime}")
    value = rho(n)
    if value.denominator != 1:
        raise MonnaError(f"rho({n}) = {value} is not a natural number")
    return value.numerator


def rho_nat_inverse(N: int, prime: int) -> PAdicRational:
    """Canonical ``n`` in ``Q_p/Z_p`` with ``rho_nat(n) == N``."""
    if N < 0:
        raise MonnaError(f"{N} is not a natural number")
    return rho_section(Fraction(N), prime)


def rho_section(r: Fraction | int, prime: int) -> PAdicRational:
    """
    Terminating-expansion preimage of a nonnegative p-ary rational.

    ``rho(rho_section(r, p)) == r`` exactly; the other preimage of a p-ary
    rational (with a ``p - 1`` tail) is never returned.

    Raises
    ------
    MonnaError
        If ``r`` is negative or its denominator is not a power of ``prime``.
    """
    r = Fraction(r)
    if r < 0:
        raise MonnaError(f"{r} is negative; ρ maps onto the positive half-line")
    d = 0
    den = r.denominator
    while den % prime == 0:
        den //= prime
        d += 1
    if den != 1:
        raise MonnaError(f"{r} is not a {prime}-ary rational")
    R = r.numerator
    # digit t of R (weight p**(t-d)) becomes the p-adic digit at position d-1-t
    x = PAdicRational.zero(prime)
    t = 0
    while R:
        R, digit = divmod(R, prime)
        if digit:
            x = x + PAdicRational.power(prime, d - 1 - t) * digit
        t += 1
    return x


def ball_image_of(ball: Ball) -> Interval:
    """
    ``ρ(ball)`` up to finitely many points.

    The canonical center has no digits at positions ``>= k``, so the free
    digits contribute exactly ``[0, p**(-k))`` on top of ``ρ(center)``.
    """
    return Interval(rho(ball.center), ball.measure)


def ball_image(m: int, n: PAdicRational, k: int) -> Interval:
    """
    Image of ``p**m n + p**k Z_p``.

    For ``m <= k`` this is ``p**(-m) ρ(n) + [0, p**(-k))``. For ``m > k`` some
    digits of ``p**m n`` fall inside the ball's free positions and the ball is
    described by a coarser center; the image is still its canonical interval.
    """
    return ball_image_of(Ball(n.shift(m), k))


def holder_gap(x: PAdicRational, y: PAdicRational) -> tuple[Fraction, Fraction]:
    """``(|ρ(x) - ρ(y)|, |x - y|_p)``; the first never exceeds the second."""
    return abs(rho(x) - rho(y)), norm(x - y)


@dataclass(frozen=True)
class MeasureCheck:
    measure: Fraction
    image_length: Fraction
    members_checked: int
    members_inside: int

    @property
    def passed(self) -> bool:
        return self.measure == self.image_length and self.members_checked == self.members_inside


def measure_preservation_check(
    b: Ball,
    rng: np.random.Generator | None = None,
    samples: int = 100,
) -> MeasureCheck:
    """
    Compare ``μ(b)`` with the length of ``ρ(b)`` and check that random members
    land in the (closed) image interval.
    """
    image = ball_image_of(b)
    inside = 0
    if rng is not None:
        for _ in range(samples):
            if image.contains_closed(rho(random_member(rng, b))):
                inside += 1
    checked = samples if rng is not None else 0
    return MeasureCheck(b.measure, image.length, checked, inside)


def image_partition_check(balls: Iterable[Ball]) -> tuple[int, Fraction]:
    """
    Over all pairs of disjoint balls, count the pairs and return the largest
    overlap length of their images (zero when ``ρ`` respects disjointness).
    """
    balls = list(balls)
    images = [ball_image_of(ball) for ball in balls]
    pairs = 0
    worst = Fraction(0)
    for i, a in enumerate(balls):
        for j in range(i + 1, len(balls)):
            if ball_relation(a, balls[j]) is not BallRelation.DISJOINT:
                continue
            pairs += 1
            worst = max(worst, images[i].overlap_length(images[j]))
    return pairs, worst
