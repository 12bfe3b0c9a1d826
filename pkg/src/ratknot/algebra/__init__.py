"""Exact Laurent polynomials and rational functions over the integers."""
from ratknot.algebra.field import FieldElem, substitute
from ratknot.algebra.gcd import exact_div, gcd_cofactors, poly_gcd, try_exact_div
from ratknot.algebra.poly import MultiPoly, bracket

__all__ = [
    "MultiPoly",
    "FieldElem",
    "bracket",
    "substitute",
    "poly_gcd",
    "gcd_cofactors",
    "exact_div",
    "try_exact_div",
]
