"""Exact scalar and polynomial arithmetic."""

from .scalars import (
    GRat,
    QuadExt,
    Rat,
    as_grat_or_none,
    conj,
    format_scalar,
    is_negative_real,
    is_positive_rational,
    is_zero,
    reciprocal,
)
from .poly import (
    NEG_INFINITY,
    Poly1,
    Poly2,
    gaussian_rational_roots,
    implicitize,
    order_at_zero,
    poly2_gcd,
    poly_gcd,
    resultant_y,
    squarefree_decomposition,
    squarefree_part,
    sturm_count,
)
from .grammar import (
    format_poly1,
    format_poly2,
    parse_poly1,
    parse_poly2,
    parse_scalar,
)

__all__ = [
    "GRat",
    "QuadExt",
    "Rat",
    "NEG_INFINITY",
    "Poly1",
    "Poly2",
    "as_grat_or_none",
    "conj",
    "format_poly1",
    "format_poly2",
    "format_scalar",
    "gaussian_rational_roots",
    "implicitize",
    "is_negative_real",
    "is_positive_rational",
    "is_zero",
    "order_at_zero",
    "parse_poly1",
    "parse_poly2",
    "parse_scalar",
    "poly2_gcd",
    "poly_gcd",
    "reciprocal",
    "resultant_y",
    "squarefree_decomposition",
    "squarefree_part",
    "sturm_count",
]
