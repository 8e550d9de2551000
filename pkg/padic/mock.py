"""
Random instance generators for property checks and tests.

Everything takes a ``numpy.random.Generator`` so that verification runs are
reproducible from a single seed.
"""

from __future__ import annotations

import numpy as np

from .balls import Ball
from .lcf import PiecewiseConstant
from .numbers import PAdicRational

__all__ = [
    "random_ball",
    "random_function",
    "random_member",
    "random_padic",
    "random_unit",
]


def random_unit(rng: np.random.Generator, prime: int, digits: int = 4) -> int:
    """Random integer not divisible by ``prime`` with up to ``digits`` digits."""
    high = int(rng.integers(0, prime ** max(digits - 1, 0)))
    return high * prime + int(rng.integers(1, prime))


def random_padic(
    rng: np.random.Generator,
    prime: int,
    valuations: tuple[int, int] = (-4, 4),
    *,
    signed: bool = True,
    zero_rate: float = 0.0,
) -> PAdicRational:
    """
    Random element of Z[1/p] with valuation drawn from ``valuations``.

    Parameters
    ----------
    signed:
        Allow negative mantissas (infinite ``p - 1`` tails).
    zero_rate:
        Probability of returning zero.
    """
    if zero_rate and rng.random() < zero_rate:
        return PAdicRational.zero(prime)
    v = int(rng.integers(valuations[0], valuations[1] + 1))
    unit = random_unit(rng, prime)
    if signed and rng.random() < 0.5:
        unit = -unit
    return PAdicRational(prime, unit).shift(v)


def random_member(rng: np.random.Generator, ball: Ball, digits: int = 6, *, signed: bool = True) -> PAdicRational:
    offset = int(rng.integers(0, ball.prime**digits))
    if signed and rng.random() < 0.5:
        offset = -offset
    return ball.center + PAdicRational(ball.prime, offset).shift(ball.radius_exp)


def random_ball(rng: np.random.Generator, outer: Ball, radius_exp: int) -> Ball:
    """Random sub-ball of ``outer`` with the given radius exponent."""
    if radius_exp < outer.radius_exp:
        raise ValueError("sub-ball cannot be larger than the outer ball")
    return Ball(random_member(rng, outer, digits=radius_exp - outer.radius_exp + 1, signed=False), radius_exp)


def random_function(
    rng: np.random.Generator,
    prime: int,
    V: int,
    M: int,
    *,
    density: float = 0.6,
    real: bool = False,
) -> PiecewiseConstant:
    """
    Random function on ``B(0, p**V)`` constant on balls of radius ``p**(-M)``.

    Each of the ``p**(V+M)`` cells is filled with probability ``density``.
    """
    window = Ball(PAdicRational.zero(prime), -V)
    pieces = []
    for cell in window.descendants(M):
        if rng.random() >= density:
            continue
        value = complex(rng.normal(), 0.0 if real else rng.normal())
        pieces.append((cell, value))
    return PiecewiseConstant._trusted(prime, pieces)
