"""Exact finite-field and function-field tower computations."""

from .fields import (
    FieldCtx,
    FieldElem,
    FieldError,
    enumerate_field,
    extend_field,
    find_irreducible,
    frobenius,
    make_prime_field,
    quadratic_extension,
)
from .grammar import ParseError, format_poly, parse_element, parse_poly, parse_ratfun
from .polys import MPoly, RatFun, distinct_roots, exact_divide, substitute

__version__ = "0.1.0"
