from __future__ import annotations

import argparse
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable

from monna import MonnaError
from padic.lcf import OverlappingPiecesError
from padic.numbers import PAdicFormatError, PrimeMismatchError
from utility.Logger import create_logger
from vladimirov.operator import OperatorContractError
from wavelets.basis import WaveletIndexError, WindowError

from .config import ConfigError, RunConfig, build_config
from .history import RunHistory

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_SCHEMA = 2
EXIT_WINDOW = 3
EXIT_OPERATOR_CONTRACT = 4

HISTORY_FILE = "run_history.jsonl"


def exit_code_for(exc: BaseException) -> int | None:
    """Exit code of a known failure, ``None`` for anything unexpected."""
    from jobs._files import PropertyFailure, SchemaError

    if isinstance(exc, PropertyFailure):
        return EXIT_PROPERTY_FAILURE
    if isinstance(exc, WindowError):
        return EXIT_WINDOW
    if isinstance(exc, OperatorContractError):
        return EXIT_OPERATOR_CONTRACT
    if isinstance(
        exc,
        (
            SchemaError,
            ConfigError,
            PAdicFormatError,
            PrimeMismatchError,
            OverlappingPiecesError,
            WaveletIndexError,
            MonnaError,
        ),
    ):
        return EXIT_SCHEMA
    return None


class WaveletManager:
    """
    Runs subcommand jobs against one configuration and records every run.
    """

    def __init__(
        self,
        config: RunConfig,
        *,
        logger_name: str = "padic_wavelet.manager",
        console: bool = False,
    ):
        self.config = config
        self.logger = create_logger(logger_name, level=config.log_level, console=console)
        self.history = RunHistory(config.output_dir / HISTORY_FILE)
        self.logger.info(
            "Manager ready (p=%d, alpha=%g, window=%s, threads=%d)",
            config.prime,
            config.alpha,
            config.window,
            config.threads,
        )

    # ---------------------------------------------------------------- history
    def log_history(self, **kwargs: Any) -> int:
        return self.history.log_history(**kwargs)

    def fetch_history(self, limit: int = 50) -> list[dict[str, Any]]:
        return self.history.fetch_history(limit)

    # -------------------------------------------------------------------- jobs
    def _run_job(self, job_name: str, job_callable: Callable[..., Any], args: dict[str, Any]) -> int:
        start = time.perf_counter()
        started_at = datetime.now(timezone.utc).isoformat()
        self.log_history(
            job_name=job_name,
            event_type="job_start",
            status="started",
            started_at=started_at,
            details={"args": args, "config": self.config.to_json()},
        )
        try:
            result = job_callable(manager=self, **args)
        except Exception as exc:
            duration_ms = int((time.perf_counter() - start) * 1000)
            code = exit_code_for(exc)
            self.log_history(
                job_name=job_name,
                event_type="job_error",
                status="failed",
                started_at=started_at,
                ended_at=datetime.now(timezone.utc).isoformat(),
                duration_ms=duration_ms,
                details={"error": str(exc), "error_type": type(exc).__name__, "exit_code": code},
            )
            if code is None:
                self.logger.exception("Job %s failed", job_name)
                raise
            self.logger.error("Job %s failed (%s): %s", job_name, type(exc).__name__, exc)
            return code

        duration_ms = int((time.perf_counter() - start) * 1000)
        row_count = result.get("row_count") if isinstance(result, dict) else None
        self.log_history(
            job_name=job_name,
            event_type="job_end",
            status="success",
            started_at=started_at,
            ended_at=datetime.now(timezone.utc).isoformat(),
            duration_ms=duration_ms,
            row_count=row_count,
            details=result,
        )
        self.logger.info("Job %s finished in %d ms (%s rows)", job_name, duration_ms, row_count)
        return EXIT_OK

    def _get_job_callable(self, job_name: str) -> Callable[..., Any]:
        from jobs import JOB_REGISTRY

        try:
            return JOB_REGISTRY[job_name]
        except KeyError as exc:
            raise ConfigError(f"Unknown job '{job_name}'") from exc

    def run_job(self, job_name: str, **args: Any) -> int:
        """Run one job and return its exit code."""
        return self._run_job(job_name, self._get_job_callable(job_name), args)


def build_arg_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser.

    Global flags come before the subcommand:
        --prime, --alpha, --window V,M, --tol KEY=VALUE (repeatable),
        --out, --config, --threads, --seed, --log-level
    """
    parser = argparse.ArgumentParser(
        description="p-adic wavelets, the Vladimirov operator and the Monna map."
    )
    parser.add_argument("--config", default="config/settings.json", help="Settings JSON (default: config/settings.json).")
    parser.add_argument("--prime", type=int, default=None, help="The prime p.")
    parser.add_argument("--alpha", type=float, default=None, help="Order α > 0 of D^α.")
    parser.add_argument("--window", default=None, help="Working window 'V,M': ball B(0, p^V), resolution p^-M.")
    parser.add_argument(
        "--tol",
        action="append",
        default=None,
        help="Tolerance override KEY=VALUE (value, parseval, gram, operator); a bare number sets 'value'.",
    )
    parser.add_argument("--out", default=None, help="Output directory.")
    parser.add_argument("--threads", type=int, default=None, help="Worker threads for verify.")
    parser.add_argument("--seed", type=int, default=None, help="Seed of every random check.")
    parser.add_argument("--log-level", default=None, help="debug, info, warning or error.")

    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="Wavelet coefficients of a function JSON.")
    p_analyze.add_argument("input_path", help="Function JSON.")

    p_synth = sub.add_parser("synthesize", help="Rebuild a function from an analyze output directory.")
    p_synth.add_argument("source", help="Directory holding coefficients.csv and summary.json.")

    p_dalpha = sub.add_parser("dalpha", help="Apply D^α spectrally or pointwise.")
    p_dalpha.add_argument("input_path", help="Function JSON, or step-function JSON in real mode.")
    p_dalpha.add_argument("--mode", choices=("spectral", "direct", "real"), default="spectral")
    p_dalpha.add_argument("--point", dest="points", action="append", default=None, help="Evaluation point (repeatable).")

    p_monna = sub.add_parser("monna", help="Tabulate ρ on points and balls.")
    p_monna.add_argument("points", nargs="*", help="Points 'm/p^e'.")
    p_monna.add_argument("--ball", dest="balls", action="append", default=[], help="Ball 'center:radius_exp' (repeatable).")

    p_bridge = sub.add_parser("bridge", help="Haar and 2-adic coefficients of a step function (p=2).")
    p_bridge.add_argument("input_path", help="Step-function JSON.")

    p_verify = sub.add_parser("verify", help="Run the property suites.")
    p_verify.add_argument("--only", action="append", default=None, help="Property name (repeatable).")
    p_verify.add_argument(
        "--perturb-eigenvalue",
        type=float,
        default=None,
        help="Negative control: relative perturbation of one expected eigenvalue.",
    )
    return parser


_JOB_ARGS = {
    "analyze": ("input_path",),
    "synthesize": ("source",),
    "dalpha": ("input_path", "mode", "points"),
    "monna": ("points", "balls"),
    "bridge": ("input_path",),
    "verify": ("only", "perturb_eigenvalue"),
}


def run_from_cli(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        config = build_config(
            args.config,
            prime=args.prime,
            alpha=args.alpha,
            window=args.window,
            tolerances=args.tol,
            output_dir=args.out,
            threads=args.threads,
            seed=args.seed,
            log_level=args.log_level,
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA

    manager = WaveletManager(config, console=True)
    job_args = {name: getattr(args, name) for name in _JOB_ARGS[args.command]}
    return manager.run_job(args.command, **job_args)
