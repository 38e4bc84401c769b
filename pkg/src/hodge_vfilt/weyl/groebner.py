"""Left Gröbner bases in Weyl algebras, for ideals and submodules of D^r.

Vectors are dicts keyed by ``(position, exponents)``. Module terms compare
position over term: position 0 ranks highest, so a basis element whose
first nonzero component vanishes sits in a smaller position block.

Only Buchberger's chain criterion is applied; the product criterion does
not hold in Weyl algebras. Weight orders with negative entries are handled
by homogenizing with a central h, computing there, and setting h = 1.
"""

from __future__ import annotations

import heapq
from collections.abc import Callable, Iterable, Sequence
from typing import Any

from hodge_vfilt.errors import AlgebraMismatch, BudgetExceeded
from hodge_vfilt.utils.logging import make_logger
from hodge_vfilt.weyl.algebra import Exps, WeylAlgebra, WeylElem, monomial_product
from hodge_vfilt.weyl.orders import GREVLEX_WEYL, VWeight, WeylOrder, dot

logger = make_logger(__name__)

Term = tuple[int, Exps]
Vector = dict[Term, Any]
Guard = Callable[[Any], None]


class _Desc:
    __slots__ = ("key",)

    def __init__(self, key: Any) -> None:
        self.key = key

    def __lt__(self, other: _Desc) -> bool:
        return self.key > other.key


class _Reducer:
    __slots__ = ("lead", "lc", "terms")

    def __init__(self, lead: Term, lc: Any, terms: Vector) -> None:
        self.lead = lead
        self.lc = lc
        self.terms = terms


class _Engine:
    """Reduction machinery for one algebra and one order."""

    def __init__(self, algebra: WeylAlgebra, order: WeylOrder) -> None:
        self.algebra = algebra
        self.order = order
        self.domain = algebra.domain

    def term_key(self, term: Term) -> Any:
        return (-term[0], self.order.key(term[1]))

    def lead(self, vector: Vector) -> Term:
        return max(vector, key=self.term_key)

    def reducer(self, vector: Vector, guard: Guard | None = None) -> _Reducer:
        lead = self.lead(vector)
        lc = vector[lead]
        if guard is not None:
            guard(lc)
        terms = {t: self.domain.quo(c, lc) for t, c in vector.items()}
        return _Reducer(lead, self.domain.one, terms)

    def shifted(self, reducer: _Reducer, shift: Exps) -> Iterable[tuple[Term, Any]]:
        """Terms of x^shift * reducer, where the shift multiplies from the left."""
        for (position, exps), coeff in reducer.terms.items():
            for product, k in monomial_product(self.algebra, shift, exps):
                yield (position, product), coeff * k

    @staticmethod
    def divides(lead: Term, term: Term) -> Exps | None:
        if lead[0] != term[0]:
            return None
        shift = tuple(e - l for e, l in zip(term[1], lead[1], strict=True))
        if any(s < 0 for s in shift):
            return None
        return shift

    def reduce(
        self,
        vector: Vector,
        reducers: Sequence[_Reducer],
        *,
        keep: Callable[[Term], bool] | None = None,
        cofactors: dict[int, Vector] | None = None,
    ) -> Vector:
        """Full reduction; terms failing ``keep`` are discarded on sight.

        With ``cofactors`` the left multipliers used for each reducer index
        are accumulated as single-position vectors.
        """
        zero = self.domain.zero
        p = {t: c for t, c in vector.items() if keep is None or keep(t)}
        heap = [(_Desc(self.term_key(t)), t) for t in p]
        heapq.heapify(heap)
        remainder: Vector = {}
        while heap:
            _, term = heapq.heappop(heap)
            coeff = p.get(term)
            if coeff is None:
                continue
            for index, reducer in enumerate(reducers):
                shift = self.divides(reducer.lead, term)
                if shift is None:
                    continue
                factor = self.domain.quo(coeff, reducer.lc)
                if cofactors is not None:
                    slot = cofactors.setdefault(index, {})
                    key = (0, shift)
                    value = slot.get(key, zero) + factor
                    if value:
                        slot[key] = value
                    else:
                        slot.pop(key, None)
                for target, c in self.shifted(reducer, shift):
                    if keep is not None and not keep(target):
                        continue
                    value = p.get(target, zero) - factor * c
                    if value:
                        if target not in p:
                            heapq.heappush(heap, (_Desc(self.term_key(target)), target))
                        p[target] = value
                    else:
                        p.pop(target, None)
                break
            else:
                remainder[term] = coeff
                del p[term]
        return remainder

    def spoly(self, first: _Reducer, second: _Reducer, lcm: Term) -> Vector:
        zero = self.domain.zero
        out: Vector = {}
        for reducer, sign in ((first, 1), (second, -1)):
            shift = self.divides(reducer.lead, lcm)
            assert shift is not None
            for target, c in self.shifted(reducer, shift):
                value = out.get(target, zero) + c * sign
                if value:
                    out[target] = value
                else:
                    out.pop(target, None)
        return out


def _lcm(first: Term, second: Term) -> Term | None:
    if first[0] != second[0]:
        return None
    return first[0], tuple(max(a, b) for a, b in zip(first[1], second[1], strict=True))


def _chain_skip(
    i: int, j: int, lcm: Term, reducers: Sequence[_Reducer], pending: set[tuple[int, int]]
) -> bool:
    for k, reducer in enumerate(reducers):
        if k in (i, j) or _Engine.divides(reducer.lead, lcm) is None:
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _buchberger(
    engine: _Engine,
    vectors: Sequence[Vector],
    *,
    max_pairs: int | None,
    guard: Guard | None,
) -> list[_Reducer]:
    reducers: list[_Reducer] = []
    pending: set[tuple[int, int]] = set()

    def add(vector: Vector) -> None:
        new = len(reducers)
        reducers.append(engine.reducer(vector, guard))
        pending.update(
            (k, new) for k in range(new) if reducers[k].lead[0] == reducers[new].lead[0]
        )

    for vector in vectors:
        remainder = engine.reduce(vector, reducers)
        if remainder:
            add(remainder)

    processed = 0
    while pending:
        i, j = min(
            pending,
            key=lambda ij: _pair_key(engine, reducers[ij[0]], reducers[ij[1]], ij),
        )
        pending.discard((i, j))
        lcm = _lcm(reducers[i].lead, reducers[j].lead)
        assert lcm is not None
        if _chain_skip(i, j, lcm, reducers, pending):
            continue

        processed += 1
        if max_pairs is not None and processed > max_pairs:
            raise BudgetExceeded(
                f"Weyl Buchberger exceeded {max_pairs} S-pairs ({len(reducers)} elements)",
                pairs=processed,
            )
        remainder = engine.reduce(engine.spoly(reducers[i], reducers[j], lcm), reducers)
        if remainder:
            add(remainder)

    logger.debug(
        f"Weyl Buchberger on {engine.algebra.tag}: {processed} S-pairs reduced, "
        f"{len(reducers)} elements before reduction"
    )
    return _interreduce(engine, reducers)


def _pair_key(
    engine: _Engine, first: _Reducer, second: _Reducer, ij: tuple[int, int]
) -> Any:
    lcm = _lcm(first.lead, second.lead)
    assert lcm is not None
    return (sum(lcm[1]), engine.term_key(lcm), ij)


def _interreduce(engine: _Engine, reducers: Sequence[_Reducer]) -> list[_Reducer]:
    minimal: list[_Reducer] = []
    for index, candidate in enumerate(reducers):
        redundant = any(
            _Engine.divides(other.lead, candidate.lead) is not None
            and (other.lead != candidate.lead or other_index < index)
            for other_index, other in enumerate(reducers)
            if other_index != index
        )
        if not redundant:
            minimal.append(candidate)

    reduced = []
    for index, candidate in enumerate(minimal):
        others = [r for k, r in enumerate(minimal) if k != index]
        tail = dict(candidate.terms)
        lead = {candidate.lead: tail.pop(candidate.lead)}
        tail = engine.reduce(tail, others)
        reduced.append(engine.reducer({**lead, **tail}))
    reduced.sort(key=lambda r: engine.term_key(r.lead), reverse=True)
    return reduced


def _common_algebra(elements: Iterable[WeylElem]) -> WeylAlgebra:
    algebras = {e.algebra for e in elements}
    if len(algebras) != 1:
        raise AlgebraMismatch(f"expected elements of one algebra, got {len(algebras)}")
    return algebras.pop()


def _as_vector(element: WeylElem, position: int = 0) -> Vector:
    return {(position, e): c for e, c in element.items()}


def _component(algebra: WeylAlgebra, vector: Vector, position: int) -> WeylElem:
    return WeylElem(algebra, {e: c for (p, e), c in vector.items() if p == position})


def _resolve_order(algebra: WeylAlgebra, order: WeylOrder | VWeight | None) -> WeylOrder:
    if order is None:
        return GREVLEX_WEYL
    if isinstance(order, VWeight):
        return WeylOrder(weight=order.vector(algebra))
    return order


def homogenize(element: WeylElem, algebra: WeylAlgebra) -> WeylElem:
    """Pad every term with h to the top total degree in coordinates and derivatives."""
    if not element:
        return WeylElem(algebra, {})
    span = 2 * element.algebra.nvars
    top = max(sum(e[:span]) for e in element)
    return element.map_exponents(algebra, lambda e: e + (top - sum(e[:span]),))


def dehomogenize(element: WeylElem, algebra: WeylAlgebra) -> WeylElem:
    h = element.algebra.h_index
    assert h is not None
    return element.map_exponents(algebra, lambda e: e[:h] + e[h + 1 :])


def weyl_groebner(
    generators: Sequence[WeylElem],
    order: WeylOrder | VWeight | None = None,
    *,
    max_pairs: int | None = None,
    guard: Guard | None = None,
) -> list[WeylElem]:
    """Gröbner basis of the left ideal generated by ``generators``.

    Well-orders give the reduced basis directly. A weight with negative
    entries is handled in the homogenized algebra; the dehomogenized result
    has initial forms generating the initial ideal for that weight.

    ``guard`` sees every leading coefficient that is divided by; it may raise
    to stop a computation whose coefficients live in a parameter field.

    Raises:
        BudgetExceeded: more than ``max_pairs`` S-pairs had to be reduced.
    """
    nonzero = [g for g in generators if g]
    if not nonzero:
        return []
    algebra = _common_algebra(nonzero)
    resolved = _resolve_order(algebra, order)
    if resolved.is_well_order:
        engine = _Engine(algebra, resolved)
        basis = _buchberger(
            engine, [_as_vector(g) for g in nonzero], max_pairs=max_pairs, guard=guard
        )
        return [_component(algebra, r.terms, 0) for r in basis]

    lifted = algebra.homogenized()
    engine = _Engine(lifted, resolved.homogenized(algebra))
    basis = _buchberger(
        engine,
        [_as_vector(homogenize(g, lifted)) for g in nonzero],
        max_pairs=max_pairs,
        guard=guard,
    )
    result: list[WeylElem] = []
    for reducer in basis:
        element = dehomogenize(_component(lifted, reducer.terms, 0), algebra)
        if element and element not in result:
            result.append(element)
    return result


def module_groebner(
    rows: Sequence[Sequence[WeylElem]],
    order: WeylOrder | None = None,
    *,
    max_pairs: int | None = None,
    guard: Guard | None = None,
) -> list[list[WeylElem]]:
    """Reduced position-over-term Gröbner basis of a left submodule of D^r."""
    elements = [e for row in rows for e in row]
    if not elements:
        return []
    algebra = _common_algebra(elements)
    resolved = _resolve_order(algebra, order)
    if not resolved.is_well_order:
        raise ValueError("module Gröbner bases need a well-order")
    width = max(len(row) for row in rows)
    vectors = []
    for row in rows:
        vector: Vector = {}
        for position, element in enumerate(row):
            vector.update(_as_vector(element, position))
        if vector:
            vectors.append(vector)
    engine = _Engine(algebra, resolved)
    basis = _buchberger(engine, vectors, max_pairs=max_pairs, guard=guard)
    return [
        [_component(algebra, r.terms, position) for position in range(width)]
        for r in basis
    ]


def left_ideal_quotient(
    generators: Sequence[WeylElem],
    element: WeylElem,
    *,
    max_pairs: int | None = None,
    guard: Guard | None = None,
) -> list[WeylElem]:
    """Generators of {Q : Q * element lies in the left ideal of ``generators``}.

    Rows (g, 0) and (element, 1) span a module whose vectors with vanishing
    first component are exactly (0, Q) for such Q.
    """
    algebra = _common_algebra([*generators, element])
    rows = [[g, algebra.zero] for g in generators] + [[element, algebra.one]]
    basis = module_groebner(rows, max_pairs=max_pairs, guard=guard)
    return [row[1] for row in basis if not row[0]]


def weyl_normal_form(
    element: WeylElem, basis: Sequence[WeylElem], order: WeylOrder | None = None
) -> WeylElem:
    """Remainder of full left division by ``basis`` under a well-order."""
    if not basis:
        return element
    algebra = _common_algebra([element, *basis])
    resolved = _resolve_order(algebra, order)
    engine = _Engine(algebra, resolved)
    reducers = [engine.reducer(_as_vector(g)) for g in basis if g]
    return _component(algebra, engine.reduce(_as_vector(element), reducers), 0)


def normal_form_with_cofactors(
    element: WeylElem, basis: Sequence[WeylElem], order: WeylOrder | None = None
) -> tuple[WeylElem, list[WeylElem]]:
    """Remainder r and multipliers q_i with element = sum q_i * basis_i + r."""
    algebra = _common_algebra([element, *basis])
    resolved = _resolve_order(algebra, order)
    engine = _Engine(algebra, resolved)
    reducers = []
    scales = []
    for g in basis:
        reducer = engine.reducer(_as_vector(g))
        reducers.append(reducer)
        scales.append(_as_vector(g)[reducer.lead])
    cofactors: dict[int, Vector] = {}
    remainder = engine.reduce(_as_vector(element), reducers, cofactors=cofactors)
    multipliers = []
    for index, scale in enumerate(scales):
        q = _component(algebra, cofactors.get(index, {}), 0)
        multipliers.append(q.scale(algebra.domain.quo(algebra.domain.one, scale)))
    return _component(algebra, remainder, 0), multipliers


def weyl_membership(
    element: WeylElem, basis: Sequence[WeylElem], order: WeylOrder | None = None
) -> bool:
    """Whether ``element`` lies in the left ideal whose Gröbner basis is ``basis``."""
    return not weyl_normal_form(element, basis, order)


def v_adapted_normal_form(
    element: WeylElem,
    basis: Sequence[WeylElem],
    weight: VWeight,
    floor: int,
) -> WeylElem:
    """Reduce modulo a weight Gröbner basis, dropping terms of weight <= ``floor``.

    ``basis`` must come from ``weyl_groebner(..., weight)``. The result is zero
    exactly when ``element`` lies in J + (terms of weight <= floor).
    """
    if not basis:
        return element
    algebra = _common_algebra([element, *basis])
    vector = weight.vector(algebra)
    engine = _Engine(algebra, WeylOrder(weight=vector))
    reducers = [engine.reducer(_as_vector(g)) for g in basis if g]

    def keep(term: Term) -> bool:
        return dot(vector, term[1]) > floor

    return _component(
        algebra, engine.reduce(_as_vector(element), reducers, keep=keep), 0
    )
