"""Buchberger's algorithm for commutative polynomials over a field.

Polynomials are sympy ``PolyElement`` values. Leading terms are taken with
respect to a ``TermOrder`` key, independent of the order the ring was built
with, so one ring serves every order.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

from sympy.polys.monomials import monomial_div, monomial_gcd, monomial_lcm, monomial_mul
from sympy.polys.rings import PolyElement

from hodge_vfilt.errors import BudgetExceeded, CoefficientFieldMismatch
from hodge_vfilt.polyalg.orders import GREVLEX, TermOrder
from hodge_vfilt.utils.logging import make_logger

logger = make_logger(__name__)

Monom = tuple[int, ...]
Terms = dict[Monom, Any]


class _Reducer:
    __slots__ = ("lm", "lc", "terms")

    def __init__(self, terms: Terms, order: TermOrder) -> None:
        self.lm = max(terms, key=order.key)
        self.lc = terms[self.lm]
        self.terms = terms


def leading_monomial(p: PolyElement, order: TermOrder = GREVLEX) -> Monom:
    if not p:
        raise ValueError("the zero polynomial has no leading monomial")
    return max(p.keys(), key=order.key)


def leading_coefficient(p: PolyElement, order: TermOrder = GREVLEX) -> Any:
    return p[leading_monomial(p, order)]


def _subtract_multiple(
    p: Terms, reducer: _Reducer, shift: Monom, factor: Any, zero: Any
) -> None:
    for monom, coeff in reducer.terms.items():
        key = monomial_mul(monom, shift)
        value = p.get(key, zero) - factor * coeff
        if value:
            p[key] = value
        else:
            p.pop(key, None)


def _reduce(
    p: Terms, reducers: Sequence[_Reducer], order: TermOrder, domain: Any
) -> Terms:
    p = dict(p)
    remainder: Terms = {}
    while p:
        monom = max(p, key=order.key)
        coeff = p[monom]
        for reducer in reducers:
            shift = monomial_div(monom, reducer.lm)
            if shift is not None:
                factor = domain.quo(coeff, reducer.lc)
                _subtract_multiple(p, reducer, shift, factor, domain.zero)
                break
        else:
            remainder[monom] = coeff
            del p[monom]
    return remainder


def _monic(terms: Terms, order: TermOrder, domain: Any) -> Terms:
    lc = terms[max(terms, key=order.key)]
    return {m: domain.quo(c, lc) for m, c in terms.items()}


def _check_ring(polys: Sequence[PolyElement]) -> Any:
    rings = {p.ring for p in polys}
    if len(rings) > 1:
        raise CoefficientFieldMismatch("polynomials belong to different rings")
    return rings.pop()


def normal_form(
    p: PolyElement, basis: Sequence[PolyElement], order: TermOrder = GREVLEX
) -> PolyElement:
    """Remainder of ``p`` under full multivariate division by ``basis``."""
    ring = _check_ring([p, *basis])
    reducers = [_Reducer(dict(g), order) for g in basis if g]
    return ring.from_dict(_reduce(dict(p), reducers, order, ring.domain))


def _chain_skip(
    i: int, j: int, lcm: Monom, reducers: Sequence[_Reducer], pending: set[tuple[int, int]]
) -> bool:
    for k, reducer in enumerate(reducers):
        if k in (i, j) or monomial_div(lcm, reducer.lm) is None:
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def groebner_basis(
    polys: Sequence[PolyElement],
    order: TermOrder = GREVLEX,
    *,
    max_pairs: int | None = None,
) -> list[PolyElement]:
    """Reduced Gröbner basis of the ideal generated by ``polys``.

    Uses the product and chain criteria. The result is monic and sorted by
    descending leading monomial, so it is canonical for the ideal and order.

    Raises:
        BudgetExceeded: more than ``max_pairs`` S-pairs had to be reduced.
    """
    nonzero = [p for p in polys if p]
    if not nonzero:
        return []
    ring = _check_ring(nonzero)
    domain = ring.domain

    reducers: list[_Reducer] = []
    for p in nonzero:
        terms = _reduce(dict(p), reducers, order, domain)
        if terms:
            reducers.append(_Reducer(_monic(terms, order, domain), order))

    pending = {(i, j) for j in range(len(reducers)) for i in range(j)}
    processed = 0
    while pending:
        i, j = min(
            pending,
            key=lambda ij: (
                order.key(monomial_lcm(reducers[ij[0]].lm, reducers[ij[1]].lm)),
                ij,
            ),
        )
        pending.discard((i, j))
        first, second = reducers[i], reducers[j]
        if not any(monomial_gcd(first.lm, second.lm)):
            continue
        lcm = monomial_lcm(first.lm, second.lm)
        if _chain_skip(i, j, lcm, reducers, pending):
            continue

        processed += 1
        if max_pairs is not None and processed > max_pairs:
            raise BudgetExceeded(
                f"Buchberger exceeded {max_pairs} S-pairs ({len(reducers)} elements)",
                pairs=processed,
            )

        spoly: Terms = {}
        _subtract_multiple(
            spoly, first, monomial_div(lcm, first.lm), -domain.one, domain.zero
        )
        _subtract_multiple(
            spoly, second, monomial_div(lcm, second.lm), domain.one, domain.zero
        )
        remainder = _reduce(spoly, reducers, order, domain)
        if remainder:
            new = len(reducers)
            reducers.append(_Reducer(_monic(remainder, order, domain), order))
            pending.update((k, new) for k in range(new))

    logger.debug(
        f"Buchberger: {processed} S-pairs reduced, {len(reducers)} elements before reduction"
    )
    return [ring.from_dict(r.terms) for r in _interreduce(reducers, order, domain)]


def _interreduce(
    reducers: Sequence[_Reducer], order: TermOrder, domain: Any
) -> list[_Reducer]:
    minimal: list[_Reducer] = []
    for index, candidate in enumerate(reducers):
        redundant = any(
            monomial_div(candidate.lm, other.lm) is not None
            and (other.lm != candidate.lm or other_index < index)
            for other_index, other in enumerate(reducers)
            if other_index != index
        )
        if not redundant:
            minimal.append(candidate)

    reduced = []
    for index, candidate in enumerate(minimal):
        others = [r for k, r in enumerate(minimal) if k != index]
        tail = dict(candidate.terms)
        lead = {candidate.lm: tail.pop(candidate.lm)}
        tail = _reduce(tail, others, order, domain)
        reduced.append(_Reducer(_monic({**lead, **tail}, order, domain), order))
    reduced.sort(key=lambda r: order.key(r.lm), reverse=True)
    return reduced
