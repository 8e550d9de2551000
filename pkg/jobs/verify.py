"""
Job to run the property suites and write a machine-readable report.

Suites run concurrently on a thread pool capped by the configured thread
count; each suite draws from its own generator seeded by the run seed and
the suite name, so results do not depend on scheduling.
"""

from __future__ import annotations

import asyncio
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from manager.config import ConfigError

from ._files import PropertyFailure, write_json
from .properties import PROPERTY_REGISTRY, PropertyResult

REPORT_FILE = "verify_report.json"


def _rng_for(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode("utf-8"))])


def _run_property(manager: Any, name: str, perturb: float | None) -> tuple[PropertyResult, int]:
    start = time.perf_counter()
    result = PROPERTY_REGISTRY[name](manager.config, _rng_for(manager.config.seed, name), perturb)
    duration_ms = int((time.perf_counter() - start) * 1000)
    manager.logger.info(
        "Property %s: %s (residual %.3g, %d checked, %d ms)",
        name,
        "skipped" if result.skipped else ("pass" if result.passed else "FAIL"),
        result.residual,
        result.checked,
        duration_ms,
    )
    return result, duration_ms


async def _run_all_async(manager: Any, names: Sequence[str], perturb: float | None) -> list[tuple[PropertyResult, int]]:
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=manager.config.threads) as executor:
        tasks = [loop.run_in_executor(executor, _run_property, manager, name, perturb) for name in names]
        return list(await asyncio.gather(*tasks))


def run(
    *,
    manager: Any,
    only: Sequence[str] | None = None,
    perturb_eigenvalue: float | None = None,
    output_dir: str | None = None,
) -> dict[str, Any]:
    """
    Parameters
    ----------
    manager:
        WaveletManager instance.
    only:
        Property names to run (default: all of them, in registry order).
    perturb_eigenvalue:
        Negative control: relative perturbation of one expected eigenvalue,
        e.g. ``1e-3``; the eigenvalue suite must then fail.

    Raises
    ------
    PropertyFailure
        After the report is written, if any property failed.
    """
    config = manager.config
    out = Path(output_dir) if output_dir else config.output_dir
    names = list(only) if only else list(PROPERTY_REGISTRY)
    unknown = [name for name in names if name not in PROPERTY_REGISTRY]
    if unknown:
        raise ConfigError(f"unknown properties: {', '.join(unknown)}; known: {', '.join(PROPERTY_REGISTRY)}")
    perturb = None if perturb_eigenvalue is None else 1.0 + perturb_eigenvalue

    if config.threads > 1:
        outcomes = asyncio.run(_run_all_async(manager, names, perturb))
    else:
        outcomes = [_run_property(manager, name, perturb) for name in names]

    # timings stay out of the report
    properties = [result.to_json() for result, _ in outcomes]
    failed = [result.name for result, _ in outcomes if not result.passed]
    report = {
        "config": config.to_json(),
        "perturb_eigenvalue": perturb_eigenvalue,
        "passed": not failed,
        "failed": failed,
        "properties": properties,
    }
    path = write_json(report, out / REPORT_FILE)
    if failed:
        raise PropertyFailure(f"failed properties: {', '.join(failed)} (report: {path})")
    durations = {result.name: duration_ms for result, duration_ms in outcomes}
    return {"row_count": len(properties), "passed": True, "report": str(path), "durations_ms": durations}
