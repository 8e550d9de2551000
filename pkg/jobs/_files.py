"""
File I/O shared by the jobs. Every parse failure surfaces as
:class:`SchemaError` naming the file.
"""

from __future__ import annotations

import csv
import json
import math
import numbers
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from haar_bridge.haar import DyadicStepFn
from padic.lcf import PiecewiseConstant


class SchemaError(ValueError):
    """Raised when an input file does not follow its declared format."""


class PropertyFailure(RuntimeError):
    """Raised when a verification run has at least one failing property."""


def read_json(path: str | Path) -> Any:
    filepath = Path(path)
    try:
        return json.loads(filepath.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise SchemaError(f"input file not found: {filepath}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{filepath} is not valid JSON: {exc}") from exc


def format_json(value: Any, level: int = 0) -> str:
    """
    JSON text with two-space indent and every float written with 17
    significant digits.
    """
    pad = "  " * (level + 1)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None or isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        value = float(value)
        return f"{value:.17g}" if math.isfinite(value) else json.dumps(value)
    if isinstance(value, Mapping):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(key), ensure_ascii=False)}: {format_json(item, level + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [pad + format_json(item, level + 1) for item in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    raise TypeError(f"cannot write {type(value).__name__} as JSON")


def write_json(payload: Any, path: str | Path) -> Path:
    filepath = Path(path)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    filepath.write_text(format_json(payload) + "\n", encoding="utf-8")
    return filepath


def write_rows(rows: Iterable[Mapping[str, Any]], fieldnames: Sequence[str], path: str | Path) -> int:
    """Write a CSV with a header; returns the number of data rows."""
    filepath = Path(path)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(filepath, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=list(fieldnames))
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
            count += 1
    return count


def format_complex(value: complex) -> dict[str, str]:
    return {"re": f"{value.real:.17g}", "im": f"{value.imag:.17g}"}


def load_function(path: str | Path, prime: int) -> PiecewiseConstant:
    """
    Read a function JSON and check it against the configured prime.

    Raises
    ------
    SchemaError
        On malformed content, overlapping pieces or a prime mismatch.
    """
    payload = read_json(path)
    if not isinstance(payload, dict):
        raise SchemaError(f"{path}: expected a JSON object with 'prime' and 'pieces'")
    try:
        f = PiecewiseConstant.from_json(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    if f.prime != prime:
        raise SchemaError(f"{path}: function is {f.prime}-adic but the run uses p={prime}")
    return f


def load_step_function(path: str | Path) -> DyadicStepFn:
    payload = read_json(path)
    if not isinstance(payload, dict):
        raise SchemaError(f"{path}: expected a JSON object with 'K', 'M' and 'values'")
    try:
        return DyadicStepFn.from_json(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: {exc}") from exc


__all__ = [
    "PropertyFailure",
    "SchemaError",
    "format_complex",
    "format_json",
    "load_function",
    "load_step_function",
    "read_json",
    "write_json",
    "write_rows",
]
