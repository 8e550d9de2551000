"""
The pullback ``ρ*f(x) = f(ρ(x))`` between ``L²(R_+)`` and ``L²(Q_2)``.

Cell ``[j 2**(-M), (j+1) 2**(-M))`` is the image of exactly one 2-adic ball of
radius ``2**(-M)``, so a dyadic step function pulls back to a piecewise
constant function with the same values and the same norm. Under the pullback
the Haar wavelet ``Ψ_{γ, ρ(n)}`` becomes ``e^{-iπ n̂} ψ_{γ1n}``, where ``n̂`` is
``n`` read as a rational in ``[0, 1)``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable

import numpy as np

from monna import MonnaError, rho, rho_nat, rho_nat_inverse, rho_section
from padic.balls import Ball
from padic.lcf import PiecewiseConstant, inner_product
from padic.numbers import PAdicRational
from vladimirov.operator import AlphaParam, OperatorContractError, eigenvalue, evaluate_direct
from wavelets.basis import WaveletIndex, WindowError, synthesize
from wavelets.expansion import analyze, check_window

from .haar import DyadicStepFn, HaarCoefficients, HaarIndex, haar_analyze, haar_fn, haar_synthesize

__all__ = [
    "HAAR_PRIME",
    "commutation_residual",
    "haar_index_of",
    "haar_phase",
    "pullback",
    "pushforward",
    "real_dalpha",
    "shift_identity_residual",
    "spectral_consistency_residual",
    "theorem7_residual",
    "unitarity_residual",
    "wavelet_index_of",
]

HAAR_PRIME = 2


def haar_phase(n: PAdicRational) -> complex:
    """``e^{iπ n̂}``: the value of ``χ(n/2)``, which ``ψ_{γ1n}`` carries on its support."""
    return cmath.exp(1j * np.pi * float(n.to_fraction()))


def _cell_ball(j: int, M: int) -> Ball:
    return Ball(rho_section(Fraction(j, 2**M), HAAR_PRIME), M)


def pullback(f: DyadicStepFn) -> PiecewiseConstant:
    """``ρ*f``; one ball per cell, values carried over unchanged."""
    pieces = [(_cell_ball(j, f.M), complex(value)) for j, value in enumerate(f.values)]
    return PiecewiseConstant.from_pieces(HAAR_PRIME, pieces)


def pushforward(g: PiecewiseConstant, K: int, M: int) -> DyadicStepFn:
    """
    Inverse of :func:`pullback` on the window ``B(0, 2**K)`` at resolution
    ``2**(-M)``.

    Raises
    ------
    WindowError
        If ``g`` is not 2-adic, leaves the window or is finer than ``2**(-M)``.
    """
    if g.prime != HAAR_PRIME:
        raise WindowError(f"only 2-adic functions push forward to the half-line, got p={g.prime}")
    check_window(g, K, M)
    return DyadicStepFn(K, M, np.array([g.value_on(_cell_ball(j, M)) for j in range(2 ** (K + M))]))


def unitarity_residual(f: DyadicStepFn, g: DyadicStepFn) -> float:
    """``|<ρ*f, ρ*g> - <f, g>|``."""
    return abs(inner_product(pullback(f), pullback(g)) - f.inner(g))


def _default_window(gamma: int, N: int) -> tuple[int, int]:
    return max(0, gamma + N.bit_length()), max(0, 1 - gamma)


def theorem7_residual(gamma: int, n: PAdicRational, window: tuple[int, int] | None = None) -> float:
    """
    ``max |ρ*Ψ_{γ, ρ(n)} - e^{-iπ n̂} ψ_{γ1n}|`` over the common refinement.

    ``window`` is ``(K, M)``; by default the smallest one holding the Haar
    support ``[2**γ ρ(n), 2**γ (ρ(n)+1))`` at resolution ``2**(γ-1)``.

    Raises
    ------
    WindowError
        If the Haar wavelet does not fit the window.
    """
    N = rho_nat(n)
    K, M = _default_window(gamma, N) if window is None else window
    if K < 0 or M < 0 or M < 1 - gamma or (N + 1) * Fraction(2) ** gamma > 2**K:
        raise WindowError(f"Haar wavelet (γ={gamma}, n={N}) does not fit the window K={K}, M={M}")
    idx = HaarIndex(gamma, N)
    haar = DyadicStepFn.from_function(K, M, lambda t: haar_fn(idx, t))
    expected = synthesize(WaveletIndex(HAAR_PRIME, gamma, 1, n)).scale(haar_phase(n).conjugate())
    return pullback(haar).max_abs_difference(expected)


def commutation_residual(f: DyadicStepFn) -> float:
    """
    Largest deviation between the 2-adic coefficients of ``ρ*f`` and the
    phase-adjusted Haar coefficients of ``f``, index by index, scaling
    coefficients included.
    """
    haar: HaarCoefficients = haar_analyze(f)
    padic = analyze(pullback(f), f.K, f.M)
    worst = abs(padic.scaling_coeff - haar.scaling)
    for idx, value in padic.coeffs.items():
        real_side = haar.coeffs[haar_index_of(idx)]
        worst = max(worst, abs(value - haar_phase(idx.n).conjugate() * real_side))
    return worst


def real_dalpha(f: DyadicStepFn, alpha: float, t: Fraction) -> complex:
    """
    ``∂^α f(t) = ρ*^{-1} D^α ρ* f(t)`` for any rational ``t >= 0``.

    ``D^α ρ*f`` is constant on every 2-adic ball of radius ``2**(-M)``, so the
    value at ``t`` is the value at the terminating preimage of the left end
    of the grid cell holding ``t``.

    Raises
    ------
    OperatorContractError
        If ``alpha <= 0``.
    MonnaError
        If ``t`` is negative.
    """
    a = AlphaParam(alpha, HAAR_PRIME)
    t = Fraction(t)
    if t < 0:
        raise MonnaError(f"{t} is negative; the half-line starts at 0")
    left = Fraction(math.floor(t * 2**f.M), 2**f.M)
    return evaluate_direct(pullback(f), rho_section(left, HAAR_PRIME), a)


def spectral_consistency_residual(
    f: DyadicStepFn,
    alpha: float,
    points: Iterable[Fraction],
    *,
    tolerance: float = 1e-12,
) -> float:
    """
    ``max |Σ 2**(α(1-γ)) c_{γn} Ψ_{γn}(t) - ∂^α f(t)|`` over ``points``.

    Raises
    ------
    OperatorContractError
        If ``f`` has a nonzero mean.
    """
    a = AlphaParam(alpha, HAAR_PRIME)
    haar = haar_analyze(f)
    if abs(haar.scaling) > tolerance:
        raise OperatorContractError(f"scaling coefficient {haar.scaling:.3g} is nonzero")
    scaled = HaarCoefficients(
        f.K,
        f.M,
        0j,
        {idx: value * eigenvalue(idx.gamma, a) for idx, value in haar.coeffs.items()},
    )
    image = haar_synthesize(scaled)
    return max(abs(image.evaluate(Fraction(t)) - real_dalpha(f, alpha, t)) for t in points)


def _on_boundary(value: Fraction) -> bool:
    return (2 * value).denominator == 1


def shift_identity_residual(
    gamma: int,
    n: PAdicRational,
    points: Iterable[PAdicRational],
    *,
    half: bool = False,
) -> tuple[int, int]:
    """
    Compare ``1_I(ρ(2**γ x) - ρ(n))`` with ``1_I(ρ(2**γ x - n))`` for
    ``I = [0, 1)`` (or ``[0, 1/2)`` when ``half``) at every point whose images
    are not multiples of ``1/2``.

    Returns ``(points checked, mismatches)``.
    """
    width = Fraction(1, 2) if half else Fraction(1)
    base = rho(n)
    checked = mismatches = 0
    for x in points:
        y = x.shift(gamma)
        left, right = rho(y), rho(y - n)
        if _on_boundary(left) or _on_boundary(right):
            continue
        checked += 1
        if (0 <= left - base < width) != (0 <= right < width):
            mismatches += 1
    return checked, mismatches


def haar_index_of(idx: WaveletIndex) -> HaarIndex:
    """Haar index ``(γ, ρ(n))`` paired with the 2-adic index ``(γ, 1, n)``."""
    return HaarIndex(idx.gamma, rho_nat(idx.n))


def wavelet_index_of(idx: HaarIndex) -> WaveletIndex:
    return WaveletIndex(HAAR_PRIME, idx.gamma, 1, rho_nat_inverse(idx.n, HAAR_PRIME))
