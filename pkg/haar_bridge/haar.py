"""
Haar wavelets on the half-line and dyadic step functions.

Intervals are half-open everywhere: the mother wavelet is +1 on [0, 1/2),
-1 on [1/2, 1) and 0 elsewhere, so pointwise statements are exact off a
finite set of dyadic points.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Mapping

import numpy as np

__all__ = [
    "HAAR_FIELDS",
    "DyadicStepFn",
    "HaarCoefficients",
    "HaarIndex",
    "haar_analyze",
    "haar_analyze_direct",
    "haar_fn",
    "haar_indices",
    "haar_mother",
    "haar_synthesize",
    "write_haar_coefficients",
]

HAAR_FIELDS = ["gamma", "n", "re", "im"]

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class DyadicStepFn:
    """
    Step function on ``[0, 2**K)`` with cells of width ``2**(-M)``; cell ``j``
    covers ``[j 2**(-M), (j+1) 2**(-M))``.
    """

    K: int
    M: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.K < 0 or self.M < 0:
            raise ValueError(f"K and M must be nonnegative, got K={self.K}, M={self.M}")
        values = np.array(self.values, dtype=complex)
        if values.shape != (2 ** (self.K + self.M),):
            raise ValueError(f"expected {2 ** (self.K + self.M)} cell values, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, K: int, M: int, fn: Callable[[Fraction], complex]) -> "DyadicStepFn":
        """Sample ``fn`` at the left end of every cell."""
        width = Fraction(1, 2**M)
        return cls(K, M, np.array([complex(fn(j * width)) for j in range(2 ** (K + M))]))

    @property
    def cell_width(self) -> Fraction:
        return Fraction(1, 2**self.M)

    def cell_left(self, j: int) -> Fraction:
        return j * self.cell_width

    def evaluate(self, t: Fraction) -> complex:
        j = t / self.cell_width
        if t < 0 or j >= len(self.values):
            return 0j
        return complex(self.values[int(j)])

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2)) / 2**self.M

    def inner(self, other: "DyadicStepFn") -> complex:
        if (self.K, self.M) != (other.K, other.M):
            raise ValueError("step functions live on different grids")
        return complex(np.vdot(other.values, self.values)) / 2**self.M

    def to_json(self) -> dict[str, Any]:
        return {"K": self.K, "M": self.M, "values": [[v.real, v.imag] for v in self.values]}

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> "DyadicStepFn":
        values = [complex(float(re_part), float(im_part)) for re_part, im_part in payload["values"]]
        return cls(int(payload["K"]), int(payload["M"]), np.array(values, dtype=complex))


@dataclass(frozen=True, order=True)
class HaarIndex:
    gamma: int
    n: int

    def support(self) -> tuple[Fraction, Fraction]:
        width = Fraction(2) ** self.gamma
        return self.n * width, (self.n + 1) * width


@dataclass(frozen=True)
class HaarCoefficients:
    K: int
    M: int
    scaling: complex
    coeffs: dict[HaarIndex, complex] = field(default_factory=dict)

    def energy(self) -> float:
        return abs(self.scaling) ** 2 + sum(abs(c) ** 2 for c in self.coeffs.values())


def haar_mother(t: Fraction) -> int:
    if 0 <= t < Fraction(1, 2):
        return 1
    if Fraction(1, 2) <= t < 1:
        return -1
    return 0


def haar_fn(idx: HaarIndex, t: Fraction) -> float:
    """``Ψ_{γn}(t) = 2**(-γ/2) Ψ(2**(-γ) t - n)``."""
    return 2.0 ** (-idx.gamma / 2) * haar_mother(Fraction(2) ** (-idx.gamma) * Fraction(t) - idx.n)


def haar_indices(K: int, M: int) -> list[HaarIndex]:
    """Haar indices with support in ``[0, 2**K)`` and resolution ``2**(-M)``."""
    return [HaarIndex(gamma, n) for gamma in range(1 - M, K + 1) for n in range(2 ** (K - gamma))]


def haar_analyze(f: DyadicStepFn) -> HaarCoefficients:
    """
    Pyramid decomposition in O(N): pairwise sums and differences of the
    normalized cell averages, one level per step.
    """
    approx = f.values * 2.0 ** (-f.M / 2)
    coeffs: dict[HaarIndex, complex] = {}
    for step in range(1, f.K + f.M + 1):
        even, odd = approx[0::2], approx[1::2]
        detail = (even - odd) / _SQRT2
        approx = (even + odd) / _SQRT2
        gamma = step - f.M
        for n, value in enumerate(detail):
            coeffs[HaarIndex(gamma, n)] = complex(value)
    return HaarCoefficients(f.K, f.M, complex(approx[0]), dict(sorted(coeffs.items())))


def haar_analyze_direct(f: DyadicStepFn) -> HaarCoefficients:
    """Coefficients from explicit inner products, for cross-checking the pyramid."""
    lefts = [f.cell_left(j) for j in range(len(f.values))]
    width = float(f.cell_width)
    coeffs = {}
    for idx in haar_indices(f.K, f.M):
        samples = np.array([haar_fn(idx, t) for t in lefts])
        coeffs[idx] = complex(np.dot(f.values, samples)) * width
    scaling = complex(np.sum(f.values)) * width * 2.0 ** (-f.K / 2)
    return HaarCoefficients(f.K, f.M, scaling, coeffs)


def haar_synthesize(c: HaarCoefficients) -> DyadicStepFn:
    """Inverse pyramid."""
    approx = np.array([c.scaling], dtype=complex)
    for step in range(c.K + c.M, 0, -1):
        gamma = step - c.M
        detail = np.array([c.coeffs.get(HaarIndex(gamma, n), 0j) for n in range(len(approx))])
        finer = np.empty(2 * len(approx), dtype=complex)
        finer[0::2] = (approx + detail) / _SQRT2
        finer[1::2] = (approx - detail) / _SQRT2
        approx = finer
    return DyadicStepFn(c.K, c.M, approx * 2.0 ** (c.M / 2))


def write_haar_coefficients(c: HaarCoefficients, path: str | Path) -> Path:
    filepath = Path(path)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    with open(filepath, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=HAAR_FIELDS)
        writer.writeheader()
        for idx, value in c.coeffs.items():
            writer.writerow(
                {"gamma": idx.gamma, "n": idx.n, "re": f"{value.real:.17g}", "im": f"{value.imag:.17g}"}
            )
    return filepath
