"""
Job to apply the Vladimirov operator D^α.

Modes
-----
spectral
    Multiply the wavelet coefficients by their eigenvalues; requires a zero
    scaling coefficient.
direct
    Pointwise values of the integral form at p-adic points.
real
    Pointwise values of ``ρ*^{-1} D^α ρ*`` for a step function on the
    half-line (p = 2).
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from haar_bridge.bridge import HAAR_PRIME, real_dalpha
from manager.config import ConfigError
from padic.numbers import PAdicFormatError, PAdicRational, parse_padic
from vladimirov.operator import AlphaParam, apply_spectral, evaluate_direct
from wavelets.basis import window_ball
from wavelets.expansion import analyze, write_coefficients

from ._files import SchemaError, format_complex, load_function, load_step_function, write_json, write_rows

MODES = ("spectral", "direct", "real")
SPECTRAL_FILE = "dalpha_coefficients.csv"
VALUES_FILE = "dalpha_values.csv"
SUMMARY_FILE = "dalpha_summary.json"


def _padic_points(points: Sequence[str] | None, prime: int, V: int, M: int) -> list[PAdicRational]:
    if points:
        try:
            return [parse_padic(text, prime) for text in points]
        except PAdicFormatError as exc:
            raise SchemaError(str(exc)) from exc
    # default grid: one point per cell of the window
    return [ball.center for ball in window_ball(prime, V).descendants(M)]


def _real_points(points: Sequence[str] | None, K: int, M: int) -> list[Fraction]:
    if points:
        try:
            values = [Fraction(text) for text in points]
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"cannot parse real point: {exc}") from exc
        if any(t < 0 for t in values):
            raise SchemaError("real points must be nonnegative")
        return values
    return [Fraction(j, 2**M) for j in range(2 ** (K + M))]


def run(
    *,
    manager: Any,
    input_path: str,
    mode: str = "spectral",
    points: Sequence[str] | None = None,
    output_dir: str | None = None,
) -> dict[str, Any]:
    """
    Parameters
    ----------
    manager:
        WaveletManager instance; supplies prime, alpha and window.
    input_path:
        Function JSON (spectral, direct) or step-function JSON (real).
    mode:
        One of ``spectral``, ``direct``, ``real``.
    points:
        Evaluation points for the pointwise modes: ``"m/p^e"`` texts (direct)
        or fractions such as ``"3/4"`` (real).
    """
    config = manager.config
    out = Path(output_dir) if output_dir else config.output_dir
    if mode not in MODES:
        raise ConfigError(f"unknown dalpha mode {mode!r}; expected one of {', '.join(MODES)}")

    if mode == "real":
        if config.prime != HAAR_PRIME:
            raise ConfigError(f"real mode works on the half-line and needs p=2, got p={config.prime}")
        g = load_step_function(input_path)
        ts = _real_points(points, g.K, g.M)
        rows = [{"t": str(t), **format_complex(real_dalpha(g, config.alpha, t))} for t in ts]
        count = write_rows(rows, ["t", "re", "im"], out / VALUES_FILE)
        manager.logger.info("Evaluated the conjugated operator at %d points", count)
        return {"mode": mode, "alpha": config.alpha, "row_count": count}

    f = load_function(input_path, config.prime)
    a = AlphaParam(config.alpha, config.prime)

    if mode == "spectral":
        expansion = analyze(f, config.V, config.M)
        image = apply_spectral(expansion, a, tolerance=config.tolerance("value"))
        write_coefficients(image, out / SPECTRAL_FILE)
        summary = {
            "mode": mode,
            "prime": config.prime,
            "alpha": config.alpha,
            "window": [config.V, config.M],
            "scaling_coeff": [0.0, 0.0],
            "row_count": len(image.coeffs),
        }
        write_json(summary, out / SUMMARY_FILE)
        manager.logger.info("Applied D^%g spectrally to %d coefficients", config.alpha, len(image.coeffs))
        return summary

    xs = _padic_points(points, config.prime, config.V, config.M)
    rows = [{"x": str(x), **format_complex(evaluate_direct(f, x, a))} for x in xs]
    count = write_rows(rows, ["x", "re", "im"], out / VALUES_FILE)
    manager.logger.info("Evaluated D^%g directly at %d points", config.alpha, count)
    return {"mode": mode, "alpha": config.alpha, "row_count": count}
