"""Canonical text for polynomials and ideals.

Every string produced here parses back to the same polynomial with
``hodge_vfilt.parsing.parse_poly``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement

from hodge_vfilt.polyalg.rationals import format_rational


def _monomial(names: Sequence[str], monom: tuple[int, ...]) -> str:
    factors = []
    for name, power in zip(names, monom, strict=True):
        if power == 1:
            factors.append(name)
        elif power > 1:
            factors.append(f"{name}^{power}")
    return "*".join(factors)


def _coefficient(coeff: Any, domain: Any) -> tuple[bool, str]:
    """Sign and magnitude text of one coefficient."""
    if domain == QQ:
        negative = coeff < 0
        return negative, format_rational(-coeff if negative else coeff)
    return False, f"({domain.to_sympy(coeff)})"


def format_poly(p: PolyElement) -> str:
    """Render ``p`` with terms in descending grevlex, e.g. ``y^4 - 8/3*x^2*y``."""
    if not p:
        return "0"
    names = [str(symbol) for symbol in p.ring.symbols]
    domain = p.ring.domain
    pieces: list[str] = []
    for monom, coeff in p.terms(order=grevlex):
        negative, text = _coefficient(coeff, domain)
        monomial = _monomial(names, monom)
        if not monomial:
            body = text
        elif text == "1":
            body = monomial
        else:
            body = f"{text}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def sorted_generators(generators: Iterable[PolyElement]) -> list[PolyElement]:
    return sorted((g for g in generators if g), key=_sort_key)


def _sort_key(p: PolyElement) -> tuple[int, tuple[int, ...], str]:
    lead = max(p.itermonoms(), key=grevlex)
    degree = sum(lead)
    # grevlex ranks larger exponents on later variables lower at equal degree
    reversed_exps = tuple(reversed(lead))
    return (-degree, reversed_exps, format_poly(p))


def format_generators(generators: Iterable[PolyElement]) -> list[str]:
    """Canonical, sorted generator strings of an ideal."""
    return [format_poly(g) for g in sorted_generators(generators)]


def format_ideal(generators: Iterable[PolyElement]) -> str:
    rendered = format_generators(generators)
    return "(" + ", ".join(rendered) + ")" if rendered else "(0)"
