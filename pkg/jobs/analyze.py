"""
Job to expand a p-adic function in the wavelet basis.

Writes ``coefficients.csv`` (one row per basis index of the window) and
``summary.json`` carrying the scaling coefficient and the Parseval defect.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from wavelets.expansion import analyze, write_coefficients

from ._files import load_function, write_json

COEFFICIENTS_FILE = "coefficients.csv"
SUMMARY_FILE = "summary.json"


def run(*, manager: Any, input_path: str, output_dir: str | None = None) -> dict[str, Any]:
    """
    Analyze the function stored in ``input_path``.

    Parameters
    ----------
    manager:
        WaveletManager instance; supplies prime and window.
    input_path:
        Function JSON ``{"prime": p, "pieces": [...]}``.
    output_dir:
        Target directory (default: the configured output directory).

    Returns
    -------
    dict[str, Any]
        Summary with row_count.
    """
    config = manager.config
    out = Path(output_dir) if output_dir else config.output_dir
    f = load_function(input_path, config.prime)
    expansion = analyze(f, config.V, config.M)
    defect = abs(f.norm_squared() - expansion.energy())
    if defect > config.tolerance("parseval"):
        manager.logger.warning("Parseval defect %.3g exceeds tolerance %.3g", defect, config.tolerance("parseval"))

    write_coefficients(expansion, out / COEFFICIENTS_FILE)
    nonzero = sum(1 for value in expansion.coeffs.values() if abs(value) > config.tolerance("value"))
    summary = {
        "prime": config.prime,
        "window": [config.V, config.M],
        "scaling_coeff": [expansion.scaling_coeff.real, expansion.scaling_coeff.imag],
        "parseval_defect": defect,
        "norm_squared": f.norm_squared(),
        "row_count": len(expansion.coeffs),
        "nonzero_count": nonzero,
    }
    write_json(summary, out / SUMMARY_FILE)
    manager.logger.info(
        "Analyzed %s: %d coefficients (%d nonzero), defect %.3g", input_path, len(expansion.coeffs), nonzero, defect
    )
    return summary
