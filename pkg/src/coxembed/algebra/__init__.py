"""Exact arithmetic: sparse polynomials, rational functions and linear algebra."""

from .field import DegenerateSpecialization, ParamElement, cancel, poly_gcd
from .kernels import BACKEND
from .linalg import bareiss, cofactor_row, determinant, kernel_basis, rank, solve_linear
from .parse import ExpressionError, parse_expression, parse_rational
from .poly import MultiPolynomial

__all__ = [
    "BACKEND",
    "DegenerateSpecialization",
    "ExpressionError",
    "MultiPolynomial",
    "ParamElement",
    "bareiss",
    "cancel",
    "cofactor_row",
    "determinant",
    "kernel_basis",
    "parse_expression",
    "parse_rational",
    "poly_gcd",
    "rank",
    "solve_linear",
]
