"""
Run configuration: ``config/settings.json`` merged with command-line flags.

Priority: explicit flag > settings file > built-in default.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

THREADS_ENV = "PADIC_WAVELET_THREADS"

DEFAULT_TOLERANCES = {
    "value": 1e-12,
    "parseval": 1e-10,
    "gram": 1e-10,
    "operator": 1e-9,
}

DEFAULT_VERIFY = {
    "holder_pairs": 10_000,
    "ball_members": 1_000,
    "shift_points": 1_000,
    "random_functions": 20,
    "tail_instances": 50,
    "direct_points": 50,
    "sphere_depth": 40,
}

DEFAULTS: dict[str, Any] = {
    "prime": 2,
    "alpha": 1.0,
    "window": [2, 2],
    "threads": 4,
    "seed": 20240611,
    "output_dir": "output",
    "log_level": "info",
}

LOG_LEVELS = ("debug", "info", "warning", "error")


class ConfigError(ValueError):
    """Raised on invalid settings or command-line values."""


def _load_config(config_path: str | Path) -> dict[str, Any]:
    """
    Load the settings file; a missing file yields an empty mapping.

    Raises
    ------
    ConfigError
        If the file exists but is not a JSON object.
    """
    path = Path(config_path)
    if not path.exists():
        return {}
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"settings file {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ConfigError(f"settings file {path} must hold a JSON object")
    return payload


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def parse_window(text: str | Sequence[int]) -> tuple[int, int]:
    """``"V,M"`` (or a two-element list) to ``(V, M)``."""
    try:
        if isinstance(text, str):
            parts = [int(part) for part in text.split(",")]
        else:
            parts = [int(part) for part in text]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"window must be two integers 'V,M', got {text!r}") from exc
    if len(parts) != 2:
        raise ConfigError(f"window must be two integers 'V,M', got {text!r}")
    return parts[0], parts[1]


def parse_tolerances(items: Sequence[str] | None) -> dict[str, float]:
    """
    ``KEY=VALUE`` entries, or a bare number that overrides ``value``.
    """
    out: dict[str, float] = {}
    for item in items or ():
        key, sep, raw = item.partition("=")
        if not sep:
            key, raw = "value", item
        key = key.strip()
        if key not in DEFAULT_TOLERANCES:
            raise ConfigError(f"unknown tolerance {key!r}; expected one of {', '.join(DEFAULT_TOLERANCES)}")
        try:
            out[key] = float(raw)
        except ValueError as exc:
            raise ConfigError(f"tolerance {key} must be a number, got {raw!r}") from exc
    return out


@dataclass
class RunConfig:
    prime: int = DEFAULTS["prime"]
    alpha: float = DEFAULTS["alpha"]
    window: tuple[int, int] = (2, 2)
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    threads: int = DEFAULTS["threads"]
    seed: int = DEFAULTS["seed"]
    output_dir: Path = Path(DEFAULTS["output_dir"])
    log_level: str = DEFAULTS["log_level"]
    verify: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_VERIFY))

    @property
    def V(self) -> int:
        return self.window[0]

    @property
    def M(self) -> int:
        return self.window[1]

    def tolerance(self, key: str) -> float:
        return self.tolerances[key]

    def validate(self) -> "RunConfig":
        if not is_prime(self.prime):
            raise ConfigError(f"prime must be a prime number, got {self.prime}")
        if not self.alpha > 0:
            raise ConfigError(f"alpha must be positive, got {self.alpha}")
        if self.V + self.M < 0:
            raise ConfigError(f"window V={self.V}, M={self.M} is empty (V + M < 0)")
        for key, value in self.tolerances.items():
            if not value > 0:
                raise ConfigError(f"tolerance {key} must be positive, got {value}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")
        if self.log_level not in LOG_LEVELS:
            raise ConfigError(f"log level must be one of {', '.join(LOG_LEVELS)}, got {self.log_level!r}")
        return self

    def to_json(self) -> dict[str, Any]:
        return {
            "prime": self.prime,
            "alpha": self.alpha,
            "window": list(self.window),
            "tolerances": dict(self.tolerances),
            "threads": self.threads,
            "seed": self.seed,
        }


def _pick(explicit: Any, settings: Mapping[str, Any], key: str) -> Any:
    return explicit if explicit is not None else settings.get(key, DEFAULTS.get(key))


def build_config(
    config_path: str | Path = "config/settings.json",
    *,
    prime: int | None = None,
    alpha: float | None = None,
    window: str | Sequence[int] | None = None,
    tolerances: Sequence[str] | None = None,
    output_dir: str | Path | None = None,
    threads: int | None = None,
    seed: int | None = None,
    log_level: str | None = None,
) -> RunConfig:
    """
    Assemble and validate a :class:`RunConfig`.

    ``PADIC_WAVELET_THREADS`` caps the thread count from any source.

    Raises
    ------
    ConfigError
        On any invalid value.
    """
    settings = _load_config(config_path)
    try:
        tol = dict(DEFAULT_TOLERANCES)
        tol.update({key: float(value) for key, value in settings.get("tolerances", {}).items()})
        tol.update(parse_tolerances(tolerances))
        verify = dict(DEFAULT_VERIFY)
        verify.update({key: int(value) for key, value in settings.get("verify", {}).items()})
        config = RunConfig(
            prime=int(_pick(prime, settings, "prime")),
            alpha=float(_pick(alpha, settings, "alpha")),
            window=parse_window(_pick(window, settings, "window")),
            tolerances=tol,
            threads=int(_pick(threads, settings, "threads")),
            seed=int(_pick(seed, settings, "seed")),
            output_dir=Path(_pick(output_dir, settings, "output_dir")),
            log_level=str(_pick(log_level, settings, "log_level")).lower(),
            verify=verify,
        )
    except (TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid setting: {exc}") from exc

    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            config.threads = min(config.threads, int(cap))
        except ValueError as exc:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {cap!r}") from exc
    return config.validate()
