"""Exact rational arithmetic: matrices, polynomials, truncated series."""

from fractions import Fraction as QQ

from .matrix import Matrix
from .poly import (
    MPoly,
    Polynomial,
    lagrange_interpolate,
    resultant,
    resultant_eliminating,
    sylvester_matrix,
)
from .series import Series, compose_polynomial, evaluate_mpoly, implicit_lift

__all__ = [
    "QQ",
    "Matrix",
    "MPoly",
    "Polynomial",
    "Series",
    "compose_polynomial",
    "evaluate_mpoly",
    "implicit_lift",
    "lagrange_interpolate",
    "resultant",
    "resultant_eliminating",
    "sylvester_matrix",
]
