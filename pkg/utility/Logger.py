import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Literal, Optional

BASE_LOG_DIR = (Path(__file__).resolve().parent.parent / "Log").resolve()

LOG_DIR_ENV = "PADIC_WAVELET_LOG_DIR"

_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}


def _base_directory() -> Path:
    override = os.environ.get(LOG_DIR_ENV)
    return Path(override).resolve() if override else BASE_LOG_DIR


def _resolve_log_directory(path: Optional[os.PathLike[str] | str]) -> Path:
    # Log files never leave the base log directory.
    base_dir = _base_directory()
    base_dir.mkdir(parents=True, exist_ok=True)

    target_dir = base_dir
    if path not in (None, ".", "./", ".\\"):
        candidate = Path(path)
        if candidate.is_absolute():
            candidate = Path(*candidate.parts[1:])

        resolved_candidate = (base_dir / candidate).resolve()
        try:
            resolved_candidate.relative_to(base_dir)
            target_dir = resolved_candidate
        except ValueError:
            target_dir = base_dir

    target_dir.mkdir(parents=True, exist_ok=True)
    return target_dir


def create_logger(
    name: str,
    level: Literal["debug", "info", "warning", "error"] = "info",
    path: Optional[os.PathLike[str] | str] = ".",
    console: bool = False,
):
    logger = logging.getLogger(name)

    if len(logger.handlers) > 0:
        return logger

    level_set = _LEVELS.get(str(level).lower())
    if level_set is None:
        raise ValueError(f"unknown log level {level!r}; expected one of {', '.join(_LEVELS)}")

    logger.setLevel(level_set)
    logger.propagate = False

    formatter = logging.Formatter(
        "[%(asctime)s] [%(levelname)s|%(name)s|%(funcName)s:%(lineno)s] %(message)s",
        "%Y-%m-%d %H:%M:%S",
    )

    log_dir = _resolve_log_directory(path)

    handler = RotatingFileHandler(
        str(log_dir / "Logging.log"),
        maxBytes=1024 * 1024 * 5,
        backupCount=5,
        encoding="UTF-8",
    )
    handler.setFormatter(formatter)
    handler.setLevel(level_set)
    logger.addHandler(handler)

    if console:
        stream = logging.StreamHandler(sys.stderr)
        stream.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
        stream.setLevel(max(level_set, logging.WARNING))
        logger.addHandler(stream)

    logger.debug("Logger Create")
    return logger
