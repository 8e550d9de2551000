"""
Exact p-adic building blocks: the ring Z[1/p], balls with Haar measure and
locally constant functions.
"""

from .balls import Ball, BallRelation, ball_children, ball_measure, ball_relation, enclosing_ball, unit_ball
from .lcf import (
    OverlappingPiecesError,
    PiecewiseConstant,
    common_refinement,
    indicator,
    inner_product,
    linear_combine,
    omega,
    refine,
)
from .numbers import (
    INFINITE_VALUATION,
    PAdicFormatError,
    PAdicRational,
    PrimeMismatchError,
    character,
    digits,
    frac,
    norm,
    parse_padic,
    valuation,
)

__all__ = [
    "Ball",
    "BallRelation",
    "INFINITE_VALUATION",
    "OverlappingPiecesError",
    "PAdicFormatError",
    "PAdicRational",
    "PiecewiseConstant",
    "PrimeMismatchError",
    "ball_children",
    "ball_measure",
    "ball_relation",
    "character",
    "common_refinement",
    "digits",
    "enclosing_ball",
    "frac",
    "indicator",
    "inner_product",
    "linear_combine",
    "norm",
    "omega",
    "parse_padic",
    "refine",
    "unit_ball",
    "valuation",
]
