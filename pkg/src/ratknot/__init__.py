"""HOMFLY, Jones and Alexander polynomials of rational links from F-polynomials of path posets."""
from ratknot.algebra import FieldElem, MultiPoly
from ratknot.cfalgebra import (
    ContinuedFraction,
    ExtendedRational,
    canonical_link_form,
    eval_cf,
    even_cf,
    parse_cf,
    parse_fraction,
    positive_cf,
)
from ratknot.errors import RatKnotError
from ratknot.fpoly import FPolynomial, f_poly_brute, f_poly_recursive, f_tilde_recursive
from ratknot.invariants import (
    alexander,
    alexander_via_corollary,
    homfly,
    homfly_oracle,
    homfly_theorem,
    jones,
    m_factor,
)
from ratknot.poset import poset_from_cf, poset_from_rational

__version__ = "0.1.0"

__all__ = [
    "FieldElem",
    "MultiPoly",
    "ContinuedFraction",
    "ExtendedRational",
    "canonical_link_form",
    "eval_cf",
    "even_cf",
    "positive_cf",
    "parse_cf",
    "parse_fraction",
    "RatKnotError",
    "FPolynomial",
    "f_poly_brute",
    "f_poly_recursive",
    "f_tilde_recursive",
    "homfly",
    "homfly_theorem",
    "homfly_oracle",
    "jones",
    "alexander",
    "alexander_via_corollary",
    "m_factor",
    "poset_from_cf",
    "poset_from_rational",
]
