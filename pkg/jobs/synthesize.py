"""
Job to rebuild a function from an ``analyze`` output directory.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from wavelets.expansion import WaveletExpansion, read_coefficients, reconstruct

from ._files import SchemaError, read_json, write_json
from .analyze import COEFFICIENTS_FILE, SUMMARY_FILE

FUNCTION_FILE = "function.json"


def load_expansion(source: str | Path) -> WaveletExpansion:
    """
    Read ``coefficients.csv`` and ``summary.json`` from ``source``.

    Raises
    ------
    SchemaError
        On a missing file, a missing field or an unparsable cell.
    """
    source = Path(source)
    summary = read_json(source / SUMMARY_FILE)
    try:
        prime = int(summary["prime"])
        V, M = (int(v) for v in summary["window"])
        re_part, im_part = summary["scaling_coeff"]
        coeffs = read_coefficients(source / COEFFICIENTS_FILE, prime)
        return WaveletExpansion(prime, V, M, complex(float(re_part), float(im_part)), coeffs)
    except FileNotFoundError as exc:
        raise SchemaError(f"coefficient file not found: {source / COEFFICIENTS_FILE}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{source}: {exc}") from exc


def run(*, manager: Any, source: str, output_dir: str | None = None) -> dict[str, Any]:
    """
    Parameters
    ----------
    manager:
        WaveletManager instance.
    source:
        Directory written by the analyze job.
    output_dir:
        Target directory (default: the configured output directory).
    """
    out = Path(output_dir) if output_dir else manager.config.output_dir
    expansion = load_expansion(source)
    f = reconstruct(expansion)
    write_json(f.to_json(), out / FUNCTION_FILE)
    manager.logger.info("Synthesized %d pieces from %s", len(f.pieces), source)
    return {"row_count": len(f.pieces), "prime": f.prime, "output": str(out / FUNCTION_FILE)}
