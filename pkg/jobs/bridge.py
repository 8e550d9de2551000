"""
Job to run a step function on the half-line through the 2-adic bridge.

Outputs the Haar coefficients, the pulled-back function, its 2-adic wavelet
coefficients and a summary with the commutation residual.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from haar_bridge.bridge import HAAR_PRIME, commutation_residual, pullback
from haar_bridge.haar import haar_analyze, write_haar_coefficients
from manager.config import ConfigError
from wavelets.expansion import analyze, write_coefficients

from ._files import load_step_function, write_json

HAAR_FILE = "haar_coefficients.csv"
PADIC_FILE = "padic_coefficients.csv"
PULLBACK_FILE = "pullback.json"
SUMMARY_FILE = "bridge_summary.json"


def run(*, manager: Any, input_path: str, output_dir: str | None = None) -> dict[str, Any]:
    config = manager.config
    if config.prime != HAAR_PRIME:
        raise ConfigError(f"the Haar bridge exists for p=2 only, got p={config.prime}")
    out = Path(output_dir) if output_dir else config.output_dir

    g = load_step_function(input_path)
    haar = haar_analyze(g)
    f = pullback(g)
    padic = analyze(f, g.K, g.M)
    residual = commutation_residual(g)
    if residual > config.tolerance("parseval"):
        manager.logger.warning("Commutation residual %.3g exceeds tolerance", residual)

    write_haar_coefficients(haar, out / HAAR_FILE)
    write_coefficients(padic, out / PADIC_FILE)
    write_json(f.to_json(), out / PULLBACK_FILE)
    summary = {
        "K": g.K,
        "M": g.M,
        "haar_scaling": [haar.scaling.real, haar.scaling.imag],
        "padic_scaling": [padic.scaling_coeff.real, padic.scaling_coeff.imag],
        "norm_squared_real": g.norm_squared(),
        "norm_squared_padic": f.norm_squared(),
        "commutation_residual": residual,
        "row_count": len(haar.coeffs),
    }
    write_json(summary, out / SUMMARY_FILE)
    manager.logger.info("Bridged %d Haar coefficients, residual %.3g", len(haar.coeffs), residual)
    return summary
