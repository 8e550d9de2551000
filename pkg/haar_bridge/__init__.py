"""
The real side for p = 2: Haar wavelets on the half-line, dyadic step
functions and the pullback along the Monna map.
"""

from .bridge import (
    HAAR_PRIME,
    commutation_residual,
    haar_index_of,
    haar_phase,
    pullback,
    pushforward,
    real_dalpha,
    shift_identity_residual,
    spectral_consistency_residual,
    theorem7_residual,
    unitarity_residual,
    wavelet_index_of,
)
from .haar import (
    HAAR_FIELDS,
    DyadicStepFn,
    HaarCoefficients,
    HaarIndex,
    haar_analyze,
    haar_analyze_direct,
    haar_fn,
    haar_indices,
    haar_mother,
    haar_synthesize,
    write_haar_coefficients,
)

__all__ = [
    "HAAR_FIELDS",
    "HAAR_PRIME",
    "DyadicStepFn",
    "HaarCoefficients",
    "HaarIndex",
    "commutation_residual",
    "haar_analyze",
    "haar_analyze_direct",
    "haar_fn",
    "haar_index_of",
    "haar_indices",
    "haar_mother",
    "haar_phase",
    "haar_synthesize",
    "pullback",
    "pushforward",
    "real_dalpha",
    "shift_identity_residual",
    "spectral_consistency_residual",
    "theorem7_residual",
    "unitarity_residual",
    "wavelet_index_of",
    "write_haar_coefficients",
]
