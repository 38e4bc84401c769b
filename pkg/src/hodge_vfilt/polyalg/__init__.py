"""Exact commutative algebra: term orders, Gröbner bases, ideals, b-function roots."""

from hodge_vfilt.polyalg.groebner import (
    groebner_basis,
    leading_coefficient,
    leading_monomial,
    normal_form,
)
from hodge_vfilt.polyalg.ideal import (
    Ideal,
    ParamCoefficientIdeal,
    colength,
    colon_ideal,
    eliminate,
    equal_ideals,
    generator,
    groebner,
    ideal_product,
    ideal_sum,
    intersect,
    polynomial_ring,
    saturate,
    specialize,
    staircase,
)
from hodge_vfilt.polyalg.orders import GREVLEX, LEX, TermOrder, elimination_order
from hodge_vfilt.polyalg.rationals import format_rational, to_rational
from hodge_vfilt.polyalg.univariate import (
    UnivariatePoly,
    format_factored,
    rational_roots,
)

__all__ = [
    "GREVLEX",
    "LEX",
    "Ideal",
    "ParamCoefficientIdeal",
    "TermOrder",
    "UnivariatePoly",
    "colength",
    "colon_ideal",
    "eliminate",
    "elimination_order",
    "equal_ideals",
    "format_factored",
    "format_rational",
    "generator",
    "groebner",
    "groebner_basis",
    "ideal_product",
    "ideal_sum",
    "intersect",
    "leading_coefficient",
    "leading_monomial",
    "normal_form",
    "polynomial_ring",
    "rational_roots",
    "saturate",
    "specialize",
    "staircase",
    "to_rational",
]
