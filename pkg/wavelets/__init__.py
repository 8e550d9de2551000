"""
Orthonormal eigenbasis ψ_{γjn} of the Vladimirov operator: construction,
finite windows, analysis and synthesis.
"""

from .basis import (
    WaveletIndex,
    WaveletIndexError,
    WindowError,
    gram_matrix,
    index_set,
    mother_psi,
    omega_coefficient,
    omega_parseval_partial_sum,
    scaling_function,
    synthesize,
    window_ball,
)
from .expansion import (
    WaveletExpansion,
    analyze,
    check_window,
    parseval_defect,
    read_coefficients,
    reconstruct,
    write_coefficients,
)

__all__ = [
    "WaveletExpansion",
    "WaveletIndex",
    "WaveletIndexError",
    "WindowError",
    "analyze",
    "check_window",
    "gram_matrix",
    "index_set",
    "mother_psi",
    "omega_coefficient",
    "omega_parseval_partial_sum",
    "parseval_defect",
    "read_coefficients",
    "reconstruct",
    "scaling_function",
    "synthesize",
    "window_ball",
]
