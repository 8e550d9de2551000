"""
Finite multiresolution frame on the window ``B(0, p**V)`` at resolution
``p**(-M)``: one scaling coefficient plus the coefficients of
``index_set(V, M)``. The frame spans every function supported in the window
and constant on balls of radius ``p**(-M)``, so analysis and reconstruction
are exact up to floating-point rounding.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from padic.balls import BallRelation, ball_relation
from padic.lcf import PiecewiseConstant, inner_product, linear_combine
from padic.numbers import PAdicRational

from .basis import WaveletIndex, WindowError, fits_window, index_set, scaling_function, synthesize, window_ball

__all__ = [
    "COEFFICIENT_FIELDS",
    "WaveletExpansion",
    "analyze",
    "check_window",
    "parseval_defect",
    "read_coefficients",
    "reconstruct",
    "write_coefficients",
]

COEFFICIENT_FIELDS = ["gamma", "j", "n_num", "n_den_exp", "re", "im"]


@dataclass(frozen=True)
class WaveletExpansion:
    prime: int
    V: int
    M: int
    scaling_coeff: complex = 0j
    coeffs: Mapping[WaveletIndex, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for idx in self.coeffs:
            if idx.prime != self.prime:
                raise WindowError(f"index {idx} is not {self.prime}-adic")
            if not fits_window(idx, self.V, self.M):
                raise WindowError(f"index {idx} does not fit the window V={self.V}, M={self.M}")
        ordered = dict(sorted(self.coeffs.items(), key=lambda item: item[0].sort_key()))
        object.__setattr__(self, "coeffs", ordered)

    @property
    def big_ball(self):
        return window_ball(self.prime, self.V)

    def energy(self) -> float:
        return abs(self.scaling_coeff) ** 2 + sum(abs(c) ** 2 for c in self.coeffs.values())

    def scale(self, c: complex) -> "WaveletExpansion":
        return WaveletExpansion(
            self.prime,
            self.V,
            self.M,
            c * self.scaling_coeff,
            {idx: c * value for idx, value in self.coeffs.items()},
        )


def check_window(f: PiecewiseConstant, V: int, M: int) -> None:
    """
    Raise :class:`WindowError` naming the first piece that leaves
    ``B(0, p**V)`` or is finer than ``p**(-M)``.

    ``f`` is in normal form, so a piece finer than ``p**(-M)`` means ``f`` is
    not constant on the ball of radius ``p**(-M)`` around it.
    """
    if V + M < 0:
        raise WindowError(f"window V={V}, M={M} is empty (V + M < 0)")
    window = window_ball(f.prime, V)
    for ball, _ in f.pieces:
        if ball_relation(ball, window) not in (BallRelation.SUBSET, BallRelation.EQUAL):
            raise WindowError(f"piece {ball} is not inside the window {window}")
        if ball.radius_exp > M:
            raise WindowError(f"piece {ball} is finer than the resolution p^-{M}")


def analyze(f: PiecewiseConstant, V: int, M: int) -> WaveletExpansion:
    """Coefficients ``<f, φ_V>`` and ``<f, ψ_idx>`` over ``index_set(V, M)``."""
    check_window(f, V, M)
    c0 = inner_product(f, scaling_function(f.prime, V))
    coeffs = {idx: inner_product(f, synthesize(idx)) for idx in index_set(V, M, f.prime)}
    return WaveletExpansion(f.prime, V, M, c0, coeffs)


def reconstruct(e: WaveletExpansion) -> PiecewiseConstant:
    terms = [(e.scaling_coeff, scaling_function(e.prime, e.V))]
    terms.extend((value, synthesize(idx)) for idx, value in e.coeffs.items() if value != 0)
    return linear_combine(terms)


def parseval_defect(f: PiecewiseConstant, V: int, M: int) -> float:
    """``| ||f||² - |c0|² - Σ|c|² |``."""
    return abs(f.norm_squared() - analyze(f, V, M).energy())


# --------------------------------------------------------------------- CSV
def write_coefficients(e: WaveletExpansion, path: str | Path) -> Path:
    """
    Write the coefficient table (header mandatory, deterministic order).

    The scaling coefficient is not part of the table; callers store it next
    to the file (see the ``analyze`` job summary).
    """
    filepath = Path(path)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    with open(filepath, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=COEFFICIENT_FIELDS)
        writer.writeheader()
        for idx, value in e.coeffs.items():
            writer.writerow(
                {
                    "gamma": idx.gamma,
                    "j": idx.j,
                    "n_num": idx.n.mantissa,
                    "n_den_exp": idx.n.exponent,
                    "re": f"{value.real:.17g}",
                    "im": f"{value.imag:.17g}",
                }
            )
    return filepath


def read_coefficients(path: str | Path, prime: int) -> dict[WaveletIndex, complex]:
    """
    Inverse of :func:`write_coefficients`.

    Raises
    ------
    KeyError, ValueError
        On a missing column or an unparsable cell.
    """
    with open(path, "r", newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        missing = [name for name in COEFFICIENT_FIELDS if name not in (reader.fieldnames or [])]
        if missing:
            raise KeyError(f"coefficient file {path} lacks columns: {', '.join(missing)}")
        rows: Iterable[dict[str, str]] = list(reader)
    coeffs = {}
    for row in rows:
        n = PAdicRational(prime, int(row["n_num"]), int(row["n_den_exp"]))
        idx = WaveletIndex(prime, int(row["gamma"]), int(row["j"]), n)
        coeffs[idx] = complex(float(row["re"]), float(row["im"]))
    return coeffs
