"""Ideals of polynomial rings over a field and the operations built on them.

Every operation reduces to Gröbner bases: intersections and colons use an
auxiliary variable and elimination, saturation iterates colons until they
stabilize.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from sympy import Dummy, Symbol
from sympy.polys.domains import QQ
from sympy.polys.monomials import monomial_div
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement, PolyRing

from hodge_vfilt.config import Budget
from hodge_vfilt.errors import CoefficientFieldMismatch, DenominatorVanishes
from hodge_vfilt.polyalg.groebner import groebner_basis, leading_monomial, normal_form
from hodge_vfilt.polyalg.orders import GREVLEX, LEX, TermOrder, elimination_order
from hodge_vfilt.polyalg.rationals import RationalLike, to_rational
from hodge_vfilt.utils.logging import make_logger

logger = make_logger(__name__)

Monom = tuple[int, ...]


def polynomial_ring(names: Sequence[str | Symbol], domain: Any = QQ) -> PolyRing:
    """The ring domain[names] (sympy caches rings, so equal calls share one)."""
    return PolyRing(tuple(names), domain, grevlex)


def generator(ring: PolyRing, name: str) -> PolyElement:
    for symbol, gen in zip(ring.symbols, ring.gens, strict=True):
        if str(symbol) == name:
            return gen
    raise KeyError(f"{name!r} is not a variable of {ring}")


def variable_index(ring: PolyRing, name: str) -> int:
    return ring.gens.index(generator(ring, name))


class Ideal:
    """An ideal given by generators, with Gröbner bases memoized per order."""

    def __init__(
        self,
        ring: PolyRing,
        generators: Iterable[PolyElement | int] = (),
        *,
        budget: Budget | None = None,
    ) -> None:
        gens = []
        for g in generators:
            if isinstance(g, PolyElement):
                if g.ring != ring:
                    raise CoefficientFieldMismatch(
                        f"generator {g} lives in {g.ring}, expected {ring}"
                    )
            else:
                g = ring(g)
            if g:
                gens.append(g)
        self.ring = ring
        self.generators: tuple[PolyElement, ...] = tuple(gens)
        self.budget = budget or Budget()
        self._cache: dict[TermOrder, tuple[PolyElement, ...]] = {}

    def groebner(self, order: TermOrder = GREVLEX) -> tuple[PolyElement, ...]:
        if order not in self._cache:
            self._cache[order] = tuple(
                groebner_basis(
                    self.generators, order, max_pairs=self.budget.max_pairs
                )
            )
        return self._cache[order]

    def normal_form(self, p: PolyElement, order: TermOrder = GREVLEX) -> PolyElement:
        return normal_form(p, self.groebner(order), order)

    def contains(self, p: PolyElement) -> bool:
        return not self.normal_form(p)

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.generators)

    @property
    def is_unit(self) -> bool:
        return any(g.is_ground for g in self.groebner())

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def leading_monomials(self, order: TermOrder = GREVLEX) -> list[Monom]:
        return [leading_monomial(g, order) for g in self.groebner(order)]

    def minimal_generators(self) -> list[PolyElement]:
        """Reduced grevlex basis, listed by descending lex leading monomial."""
        basis = list(self.groebner())
        return sorted(basis, key=lambda g: LEX.key(leading_monomial(g)), reverse=True)

    def with_generators(self, generators: Iterable[PolyElement]) -> Ideal:
        return Ideal(self.ring, generators, budget=self.budget)

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g.as_expr()) for g in self.generators)})"


def groebner(ideal: Ideal, order: TermOrder = GREVLEX) -> list[PolyElement]:
    return list(ideal.groebner(order))


def equal_ideals(first: Ideal, second: Ideal) -> bool:
    if first.ring != second.ring:
        raise CoefficientFieldMismatch("ideals live in different rings")
    return first.contains_ideal(second) and second.contains_ideal(first)


def ideal_sum(first: Ideal, second: Ideal) -> Ideal:
    return first.with_generators(first.generators + second.generators)


def ideal_product(first: Ideal, second: Ideal) -> Ideal:
    return first.with_generators(
        f * g for f, g in itertools.product(first.generators, second.generators)
    )


def eliminate(ideal: Ideal, variables: Sequence[str], *, drop: bool = True) -> Ideal:
    """The elimination ideal I ∩ K[remaining variables].

    With ``drop`` the result lives in the smaller ring, otherwise it stays in
    the ring of ``ideal``.
    """
    ring = ideal.ring
    positions = [variable_index(ring, name) for name in variables]
    basis = ideal.groebner(elimination_order(positions))
    kept = [
        g for g in basis if all(m[i] == 0 for m in g.itermonoms() for i in positions)
    ]
    if not drop:
        return ideal.with_generators(kept)
    smaller = ring.drop(*positions)
    if not isinstance(smaller, PolyRing):
        raise ValueError("cannot eliminate every variable of the ring")
    return Ideal(smaller, (g.set_ring(smaller) for g in kept), budget=ideal.budget)


def intersect(first: Ideal, second: Ideal) -> Ideal:
    """I ∩ J as (w·I + (1 - w)·J) ∩ K[x] for a fresh variable w."""
    ring = first.ring
    if second.ring != ring:
        raise CoefficientFieldMismatch("ideals live in different rings")
    w = Dummy("w")
    bigger = ring.clone(symbols=(w, *ring.symbols))
    (wgen,) = bigger.gens[:1]
    lifted = [wgen * g.set_ring(bigger) for g in first.generators]
    lifted += [(1 - wgen) * g.set_ring(bigger) for g in second.generators]
    basis = groebner_basis(
        lifted, elimination_order([0]), max_pairs=first.budget.max_pairs
    )
    kept = [g.set_ring(ring) for g in basis if all(m[0] == 0 for m in g.itermonoms())]
    return first.with_generators(kept)


def quotient_by_element(ideal: Ideal, g: PolyElement) -> Ideal:
    """I : g, from the generators of I ∩ (g) divided by g."""
    if not g:
        return ideal.with_generators([ideal.ring.one])
    meet = intersect(ideal, ideal.with_generators([g]))
    return ideal.with_generators(h.exquo(g) for h in meet.generators)


def colon_ideal(first: Ideal, second: Ideal) -> Ideal:
    """I : J as the intersection of I : g over the generators g of J."""
    if second.is_zero:
        return first.with_generators([first.ring.one])
    result: Ideal | None = None
    for g in second.generators:
        piece = quotient_by_element(first, g)
        result = piece if result is None else intersect(result, piece)
    assert result is not None
    return result


def saturate(ideal: Ideal, g: PolyElement) -> Ideal:
    """I : g^oo, iterating colons until two consecutive ones agree."""
    if not g:
        raise ValueError("cannot saturate by the zero polynomial")
    current = ideal
    rounds = 0
    while True:
        rounds += 1
        following = quotient_by_element(current, g)
        if current.contains_ideal(following):
            logger.debug(f"saturation stabilized after {rounds} colon step(s)")
            return current.with_generators(following.groebner())
        current = following


def staircase(ideal: Ideal) -> list[Monom] | None:
    """Standard monomials of the grevlex leading ideal; None if infinite."""
    lms = ideal.leading_monomials()
    nvars = ideal.ring.ngens
    bounds = []
    for i in range(nvars):
        pure = [
            m[i] for m in lms if all(e == 0 for k, e in enumerate(m) if k != i)
        ]
        if not pure:
            return None
        bounds.append(min(pure))
    standard = [
        m
        for m in itertools.product(*(range(b) for b in bounds))
        if all(monomial_div(m, lm) is None for lm in lms)
    ]
    return sorted(standard, key=grevlex)


def colength(ideal: Ideal) -> int | float:
    """dim K[x]/I, or ``math.inf`` when I is not zero-dimensional."""
    standard = staircase(ideal)
    return math.inf if standard is None else len(standard)


@dataclass(frozen=True)
class ParamCoefficientIdeal:
    """Generators over Q(beta)[x], stored as numerator/denominator pairs.

    Numerators live in a ring containing the parameter; denominators are
    polynomials in the parameter alone.
    """

    ring: PolyRing
    parameter: str
    numerators: tuple[PolyElement, ...]
    denominators: tuple[PolyElement, ...]

    def __post_init__(self) -> None:
        if len(self.numerators) != len(self.denominators):
            raise ValueError("every numerator needs a denominator")

    @classmethod
    def polynomial(
        cls, ring: PolyRing, parameter: str, generators: Iterable[PolyElement]
    ) -> ParamCoefficientIdeal:
        gens = tuple(generators)
        return cls(ring, parameter, gens, tuple(ring.one for _ in gens))


def specialize(ideal: ParamCoefficientIdeal, value: RationalLike) -> Ideal:
    """Substitute beta = value into every generator.

    Raises:
        DenominatorVanishes: some generator has a pole at ``value``.
    """
    point = to_rational(value)
    beta = generator(ideal.ring, ideal.parameter)
    for denominator in ideal.denominators:
        if not denominator.subs(beta, point):
            raise DenominatorVanishes(value)
    fiber_ring = ideal.ring.drop(beta)
    if not isinstance(fiber_ring, PolyRing):
        raise ValueError("the parameter cannot be the only variable")
    return Ideal(
        fiber_ring,
        (num.evaluate(beta, point).set_ring(fiber_ring) for num in ideal.numerators),
    )
