"""
Manager package: configuration, run history and the job runner behind the CLI.

The public entrypoint is :class:`manager.core.WaveletManager`, used by
``Wavelet_Manager.py`` and :mod:`manager.run`.
"""

from .config import ConfigError, RunConfig, build_config
from .core import WaveletManager, run_from_cli

__all__ = ["ConfigError", "RunConfig", "WaveletManager", "build_config", "run_from_cli"]
