"""Exact polynomial exterior calculus and singular foliations on projective space."""
from .exterior import PForm, PVec, exterior_derivative, interior_product, lie_bracket, lie_derivative, pullback, wedge
from .foliation import EXACT, Foliation1D, FoliationQ, Mode, probabilistic, pullback_foliation
from .ratmap import RationalMap
from .ratpoly import Poly
from .text import ParseError, parse_form, parse_poly, parse_vector_field

__all__ = [
    "EXACT",
    "Foliation1D",
    "FoliationQ",
    "Mode",
    "PForm",
    "PVec",
    "ParseError",
    "Poly",
    "RationalMap",
    "exterior_derivative",
    "interior_product",
    "lie_bracket",
    "lie_derivative",
    "parse_form",
    "parse_poly",
    "parse_vector_field",
    "probabilistic",
    "pullback",
    "pullback_foliation",
    "wedge",
]
