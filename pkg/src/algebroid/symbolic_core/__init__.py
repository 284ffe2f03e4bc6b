"""Exact polynomial arithmetic, Groebner-based quotient algebras and a parser."""

from .algebra import (
    AlgebraMap,
    MapNotWellDefined,
    PresentationError,
    PresentedAlgebra,
    RingElement,
    apply_map,
    derive_poly,
    identity_map,
    normal_form,
    parse_element,
    parse_poly,
)
from .parser import ParseError, UnknownVariableError

__all__ = [
    "AlgebraMap",
    "MapNotWellDefined",
    "ParseError",
    "PresentationError",
    "PresentedAlgebra",
    "RingElement",
    "UnknownVariableError",
    "apply_map",
    "derive_poly",
    "identity_map",
    "normal_form",
    "parse_element",
    "parse_poly",
]
