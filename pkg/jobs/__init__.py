"""
Job registry mapping subcommand names to callables consumed by the wavelet manager.
"""

from . import analyze
from . import bridge
from . import dalpha
from . import monna_map
from . import synthesize
from . import verify

JOB_REGISTRY = {
    "analyze": analyze.run,
    "synthesize": synthesize.run,
    "dalpha": dalpha.run,
    "monna": monna_map.run,
    "bridge": bridge.run,
    "verify": verify.run,
}

__all__ = [
    "JOB_REGISTRY",
    "analyze",
    "bridge",
    "dalpha",
    "monna_map",
    "synthesize",
    "verify",
]
