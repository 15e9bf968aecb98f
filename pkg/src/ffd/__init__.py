"""Exact arithmetic and Diophantine-approximation toolkit for F_q((1/T))."""

from .gf import Fq, FieldElem, Poly, AbsValue, NEG_INF, poly_divmod, poly_gcd, abs_value

__version__ = "0.1.0"

__all__ = [
    "Fq", "FieldElem", "Poly", "AbsValue", "NEG_INF",
    "poly_divmod", "poly_gcd", "abs_value",
]
