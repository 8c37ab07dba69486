"""Quadratic Lagrange spectra over F_q((1/Y)).

Quadratic power series are handled through their eventually periodic
continued-fraction words; approximation constants and spectra are reported
as integer exponents m standing for q^-m.
"""

from .algebra import NEG_INF, FieldCtx, Poly, field, field_of_order, parse_poly
from .cfword import CFWord, TwistSpec, parse_cfword
from .laurent import LaurentSeries
from .spectrum import ApproxConstant, SpectrumReport, approx_constant, hall_bound, hurwitz, membership

__version__ = "0.1.0"

__all__ = [
    "NEG_INF",
    "ApproxConstant",
    "CFWord",
    "FieldCtx",
    "LaurentSeries",
    "Poly",
    "SpectrumReport",
    "TwistSpec",
    "approx_constant",
    "field",
    "field_of_order",
    "hall_bound",
    "hurwitz",
    "membership",
    "parse_cfword",
    "parse_poly",
]
