"""
The p-adic wavelet basis

    ψ_{γjn}(x) = p**(-γ/2) χ(p**(γ-1) j x) Ω(|p**γ x - n|_p),
    γ ∈ Z, j = 1..p-1, n ∈ Q_p/Z_p,

which is orthonormal in L²(Q_p) and diagonalizes the Vladimirov operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from monna import rho_nat, rho_nat_inverse
from padic.balls import Ball
from padic.lcf import PiecewiseConstant, inner_product, omega
from padic.numbers import PAdicRational, character

__all__ = [
    "WaveletIndex",
    "WaveletIndexError",
    "WindowError",
    "gram_matrix",
    "index_set",
    "mother_psi",
    "omega_coefficient",
    "omega_parseval_partial_sum",
    "scaling_function",
    "synthesize",
    "window_ball",
]


class WaveletIndexError(ValueError):
    """Raised when (γ, j, n) does not name a basis function."""


class WindowError(ValueError):
    """Raised when a function or index does not fit the working window."""


@dataclass(frozen=True)
class WaveletIndex:
    """
    Index ``(γ, j, n)`` with ``n`` the canonical representative
    ``m / p**ℓ``, ``0 <= m < p**ℓ``, of a class in ``Q_p/Z_p``.
    """

    prime: int
    gamma: int
    j: int
    n: PAdicRational

    def __post_init__(self) -> None:
        if not 1 <= self.j <= self.prime - 1:
            raise WaveletIndexError(f"j must lie in [1, {self.prime - 1}], got {self.j}")
        if self.n.prime != self.prime:
            raise WaveletIndexError(f"n = {self.n} is not {self.prime}-adic")
        if not 0 <= self.n.mantissa < self.prime**self.n.exponent and not self.n.is_zero():
            raise WaveletIndexError(f"n = {self.n} is not a canonical representative of Q_p/Z_p")

    @classmethod
    def of(cls, prime: int, gamma: int, j: int, n: Fraction | int = 0) -> "WaveletIndex":
        return cls(prime, gamma, j, PAdicRational.from_fraction(prime, n))

    @property
    def support(self) -> Ball:
        """``p**(-γ) n + p**(-γ) Z_p``, of measure ``p**γ``."""
        return Ball(self.n.shift(-self.gamma), -self.gamma)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.gamma, rho_nat(self.n), self.j)

    def __str__(self) -> str:
        return f"(γ={self.gamma}, j={self.j}, n={self.n})"


def window_ball(prime: int, V: int) -> Ball:
    """``B(0, p**V)``."""
    return Ball(PAdicRational.zero(prime), -V)


def scaling_function(prime: int, V: int) -> PiecewiseConstant:
    """Normalized indicator ``p**(-V/2) 1_{B(0, p**V)}``."""
    return PiecewiseConstant._trusted(prime, [(window_ball(prime, V), complex(float(prime) ** (-V / 2)))])


def mother_psi(prime: int) -> PiecewiseConstant:
    """``ψ(x) = χ(p**(-1) x) Ω(|x|_p)``."""
    return omega(prime).modulate(PAdicRational.power(prime, -1))


@lru_cache(maxsize=4096)
def synthesize(idx: WaveletIndex) -> PiecewiseConstant:
    """
    ``ψ_{γjn}`` as ``p`` pieces: on the part of the support where
    ``p**γ x - n`` has first digit ``k`` the value is
    ``p**(-γ/2) χ(j n / p) exp(2πi j k / p)``.
    """
    p, gamma = idx.prime, idx.gamma
    amplitude = float(p) ** (-gamma / 2)
    phase = character(idx.n * idx.j * PAdicRational.power(p, -1))
    pieces = []
    for k in range(p):
        center = (idx.n + k).shift(-gamma)
        value = amplitude * phase * complex(np.exp(2j * np.pi * ((idx.j * k) % p) / p))
        pieces.append((Ball(center, 1 - gamma), value))
    return PiecewiseConstant._trusted(p, pieces)


def index_set(V: int, M: int, prime: int) -> list[WaveletIndex]:
    """
    Every index whose support lies in ``B(0, p**V)`` and whose pieces have
    radius at least ``p**(-M)``; there are exactly ``p**(V+M) - 1`` of them.

    Raises
    ------
    WindowError
        If ``V + M < 0``.
    """
    if V + M < 0:
        raise WindowError(f"window V={V}, M={M} is empty (V + M < 0)")
    out = []
    for gamma in range(1 - M, V + 1):
        for N in range(prime ** (V - gamma)):
            n = rho_nat_inverse(N, prime)
            for j in range(1, prime):
                out.append(WaveletIndex(prime, gamma, j, n))
    return out


def fits_window(idx: WaveletIndex, V: int, M: int) -> bool:
    return 1 - M <= idx.gamma <= V and idx.n.exponent <= V - idx.gamma


def gram_matrix(V: int, M: int, prime: int) -> np.ndarray:
    """Gram matrix of the scaling function followed by ``index_set(V, M)``."""
    functions = [scaling_function(prime, V)] + [synthesize(idx) for idx in index_set(V, M, prime)]
    size = len(functions)
    gram = np.zeros((size, size), dtype=complex)
    for a in range(size):
        for b in range(a, size):
            gram[a, b] = inner_product(functions[a], functions[b])
            gram[b, a] = np.conj(gram[a, b])
    return gram


def omega_coefficient(idx: WaveletIndex) -> float:
    """Closed form ``<Ω, ψ_{γjn}> = p**(-γ/2) θ(γ) δ_{n0}``."""
    if idx.gamma >= 1 and idx.n.is_zero():
        return float(idx.prime) ** (-idx.gamma / 2)
    return 0.0


def omega_parseval_partial_sum(prime: int, G: int) -> Fraction:
    """Exact ``Σ_{γ=1}^{G} (p-1) p**(-γ)``; equals ``1 - p**(-G)``."""
    return sum((Fraction(prime - 1, prime**gamma) for gamma in range(1, G + 1)), Fraction(0))
