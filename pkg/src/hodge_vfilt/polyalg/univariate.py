"""Univariate polynomials over Q in the variable s.

Used for b-functions and their factors. Factorization over Q goes through
sympy; only linear factors are turned into roots.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from hodge_vfilt.polyalg.rationals import RationalLike, format_rational, to_rational

S_RING = PolyRing(("s",), QQ, lex)
(S,) = S_RING.gens


@dataclass(frozen=True)
class UnivariatePoly:
    """Dense polynomial in s with rational coefficients, lowest degree first."""

    coeffs: tuple[Any, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(to_rational(c) for c in self.coeffs)
        while coeffs and not coeffs[-1]:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_element(cls, p: PolyElement) -> UnivariatePoly:
        p = p.set_ring(S_RING) if p.ring != S_RING else p
        degree = p.degree() if p else -1
        return cls(tuple(p.get((i,), QQ.zero) for i in range(degree + 1)))

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike]) -> UnivariatePoly:
        product = S_RING.one
        for root in roots:
            product *= S - to_rational(root)
        return cls.from_element(product)

    @classmethod
    def constant(cls, value: RationalLike) -> UnivariatePoly:
        return cls((to_rational(value),))

    @cached_property
    def element(self) -> PolyElement:
        return S_RING.from_dict({(i,): c for i, c in enumerate(self.coeffs) if c})

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> UnivariatePoly:
        if self.is_zero:
            return self
        lead = self.coeffs[-1]
        return UnivariatePoly(tuple(c / lead for c in self.coeffs))

    def __call__(self, value: RationalLike) -> Any:
        x = to_rational(value)
        result = QQ.zero
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __mul__(self, other: UnivariatePoly) -> UnivariatePoly:
        return UnivariatePoly.from_element(self.element * other.element)

    def shift(self, amount: RationalLike) -> UnivariatePoly:
        """The polynomial s -> p(s + amount)."""
        return UnivariatePoly.from_element(
            self.element.compose(S, S + to_rational(amount))
        )

    def reflect(self) -> UnivariatePoly:
        """The polynomial s -> p(-s - 1), trading theta = t*dt for s."""
        return UnivariatePoly.from_element(self.element.compose(S, -S - 1))

    def divide_root(self, root: RationalLike) -> UnivariatePoly:
        quotient, remainder = self.element.div(S - to_rational(root))
        if remainder:
            raise ValueError(f"{format_rational(root)} is not a root")
        return UnivariatePoly.from_element(quotient)

    def __str__(self) -> str:
        return str(self.element.as_expr())


@dataclass(frozen=True)
class RootDecomposition:
    """Rational roots with multiplicity, and what is left over."""

    roots: tuple[Any, ...]
    cofactor: UnivariatePoly

    @property
    def is_split(self) -> bool:
        return self.cofactor.degree <= 0


def rational_roots(p: UnivariatePoly) -> RootDecomposition:
    """Split off every linear factor of ``p`` over Q.

    ``cofactor`` keeps the leading coefficient and all non-linear
    irreducible factors, so ``prod(s - r) * cofactor == p``.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no root decomposition")
    content, factors = p.element.factor_list()
    roots: list[Any] = []
    cofactor = S_RING(content)
    for factor, multiplicity in factors:
        if factor.degree() == 1:
            a, b = factor.get((1,), QQ.zero), factor.get((0,), QQ.zero)
            roots.extend([-b / a] * multiplicity)
            cofactor *= a**multiplicity
        else:
            cofactor *= factor**multiplicity
    return RootDecomposition(
        roots=tuple(sorted(roots, reverse=True)),
        cofactor=UnivariatePoly.from_element(cofactor),
    )


def root_multiset(roots: Sequence[Any]) -> list[tuple[Any, int]]:
    """Distinct roots with multiplicities, largest root first."""
    counts = Counter(roots)
    return sorted(counts.items(), key=lambda item: item[0], reverse=True)


def format_factored(roots: Sequence[Any], variable: str = "s") -> str:
    """Render prod(s - root) as ``(s+1)(s+5/6)(s+7/6)``.

    The factor at root -1 comes first, the remaining roots follow in
    decreasing order; repeated factors get an exponent.
    """
    if not roots:
        return "1"
    ordered = root_multiset(roots)
    ordered.sort(key=lambda item: item[0] != -1)
    parts = []
    for root, multiplicity in ordered:
        if root == 0:
            factor = variable
        else:
            sign = "+" if root < 0 else "-"
            factor = f"({variable}{sign}{format_rational(abs(root))})"
        if multiplicity > 1:
            factor = f"{factor}^{multiplicity}"
        parts.append(factor)
    return "".join(parts)
