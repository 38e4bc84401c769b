"""Weyl algebras D_n, D_n[s] and D_{n+1}, their V-weights and left Gröbner bases."""

from hodge_vfilt.weyl.algebra import (
    WeylAlgebra,
    WeylElem,
    format_weyl,
    monomial_product,
    weyl_mul,
)
from hodge_vfilt.weyl.groebner import (
    left_ideal_quotient,
    module_groebner,
    normal_form_with_cofactors,
    v_adapted_normal_form,
    weyl_groebner,
    weyl_membership,
    weyl_normal_form,
)
from hodge_vfilt.weyl.orders import (
    GREVLEX_WEYL,
    VWeight,
    WeylOrder,
    elimination_order,
    initial_form,
    v_degree,
    v_order,
)

__all__ = [
    "GREVLEX_WEYL",
    "VWeight",
    "WeylAlgebra",
    "WeylElem",
    "WeylOrder",
    "elimination_order",
    "format_weyl",
    "initial_form",
    "left_ideal_quotient",
    "module_groebner",
    "monomial_product",
    "normal_form_with_cofactors",
    "v_adapted_normal_form",
    "v_degree",
    "v_order",
    "weyl_groebner",
    "weyl_membership",
    "weyl_normal_form",
]
