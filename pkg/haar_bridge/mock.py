"""
Random dyadic step functions for bridge checks and tests.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .haar import DyadicStepFn


def random_step_function(
    rng: np.random.Generator,
    K: int,
    M: int,
    *,
    zero_mean: bool = False,
    real: bool = False,
) -> DyadicStepFn:
    """
    Random step function on ``[0, 2**K)`` at resolution ``2**(-M)``.

    Parameters
    ----------
    zero_mean:
        Subtract the mean so that the scaling coefficient vanishes.
    """
    size = 2 ** (K + M)
    values = rng.normal(size=size) + (0.0 if real else 1j * rng.normal(size=size))
    if zero_mean:
        values = values - values.mean()
    return DyadicStepFn(K, M, values)


def random_dyadic_points(rng: np.random.Generator, K: int, M: int, count: int) -> list[Fraction]:
    """Left ends of ``count`` random cells of the grid."""
    cells = rng.integers(0, 2 ** (K + M), size=count)
    return [Fraction(int(j), 2**M) for j in cells]


__all__ = ["random_dyadic_points", "random_step_function"]
