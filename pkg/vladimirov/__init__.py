"""
Vladimirov operator D^α: spectral action on wavelet expansions and a
pointwise evaluation of its integral form.
"""

from .operator import (
    DEFAULT_SPHERE_DEPTH,
    AlphaParam,
    OperatorContractError,
    SeriesCheck,
    apply_spectral,
    brute_force_sphere_sum,
    eigen_residual,
    eigen_sample_points,
    eigenvalue,
    evaluate_direct,
    lemma1_constant_check,
    normalization_constant,
    rescaling_residual,
)

__all__ = [
    "DEFAULT_SPHERE_DEPTH",
    "AlphaParam",
    "OperatorContractError",
    "SeriesCheck",
    "apply_spectral",
    "brute_force_sphere_sum",
    "eigen_residual",
    "eigen_sample_points",
    "eigenvalue",
    "evaluate_direct",
    "lemma1_constant_check",
    "normalization_constant",
    "rescaling_residual",
]
