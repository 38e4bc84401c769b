"""Weyl algebras over a field, with optional central variables.

An algebra has coordinates x_1..x_m (``t`` is just another coordinate), their
derivatives dx_1..dx_m, and central symbols that commute with everything
(``s``, the homogenizer ``h``, auxiliary elimination variables). Elements
are stored normally ordered, coordinates to the left of derivatives, as
maps from exponent tuples laid out as

    (coordinate exponents, derivative exponents, central exponents)

to nonzero coefficients.

When a homogenizer is declared the algebra is the homogenized Weyl algebra
with [dx_i, x_i] = h^2.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement

from hodge_vfilt.errors import AlgebraMismatch
from hodge_vfilt.polyalg.rationals import format_rational

Exps = tuple[int, ...]

HOMOGENIZER = "h"


@dataclass(frozen=True)
class WeylAlgebra:
    coordinates: tuple[str, ...]
    central: tuple[str, ...] = ()
    domain: Any = QQ
    homogenizer: str | None = None

    def __post_init__(self) -> None:
        names = self.names
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if self.homogenizer is not None and self.homogenizer not in self.central:
            raise ValueError("the homogenizer must be a central variable")

    @property
    def nvars(self) -> int:
        return len(self.coordinates)

    @property
    def width(self) -> int:
        return 2 * self.nvars + len(self.central)

    @cached_property
    def names(self) -> tuple[str, ...]:
        derivatives = tuple(f"d{name}" for name in self.coordinates)
        return self.coordinates + derivatives + self.central

    @cached_property
    def h_index(self) -> int | None:
        if self.homogenizer is None:
            return None
        return self.names.index(self.homogenizer)

    @property
    def tag(self) -> str:
        """D_n, D_n[s] or D_{n+1}, counting the coordinates other than t."""
        n = self.nvars - (1 if "t" in self.coordinates else 0)
        if "t" in self.coordinates:
            return f"D_{n + 1}"
        if "s" in self.central:
            return f"D_{n}[s]"
        return f"D_{n}"

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a generator of {self.tag}") from None

    def exps(self, **powers: int) -> Exps:
        exps = [0] * self.width
        for name, power in powers.items():
            exps[self.index(name)] = power
        return tuple(exps)

    @property
    def zero(self) -> WeylElem:
        return WeylElem(self, {})

    @property
    def one(self) -> WeylElem:
        return WeylElem(self, {(0,) * self.width: self.domain.one})

    def scalar(self, value: Any) -> WeylElem:
        return WeylElem(self, {(0,) * self.width: self.domain.convert(value)})

    def gen(self, name: str) -> WeylElem:
        exps = [0] * self.width
        exps[self.index(name)] = 1
        return WeylElem(self, {tuple(exps): self.domain.one})

    def monomial(self, exps: Exps, coeff: Any = 1) -> WeylElem:
        if len(exps) != self.width:
            raise ValueError(f"expected {self.width} exponents, got {len(exps)}")
        return WeylElem(self, {tuple(exps): self.domain.convert(coeff)})

    def element(self, terms: Mapping[Exps, Any]) -> WeylElem:
        return WeylElem(self, {e: self.domain.convert(c) for e, c in terms.items()})

    def from_polynomial(self, p: PolyElement) -> WeylElem:
        """Embed a commutative polynomial in coordinates and central symbols."""
        positions = [self.index(str(symbol)) for symbol in p.ring.symbols]
        terms: dict[Exps, Any] = {}
        for monom, coeff in p.iterterms():
            exps = [0] * self.width
            for position, power in zip(positions, monom, strict=True):
                exps[position] += power
            terms[tuple(exps)] = self.domain.convert(coeff, p.ring.domain)
        return WeylElem(self, terms)

    def homogenized(self) -> WeylAlgebra:
        return WeylAlgebra(
            self.coordinates,
            self.central + (HOMOGENIZER,),
            self.domain,
            homogenizer=HOMOGENIZER,
        )

    def dehomogenized(self) -> WeylAlgebra:
        central = tuple(c for c in self.central if c != self.homogenizer)
        return WeylAlgebra(self.coordinates, central, self.domain)

    def with_domain(self, domain: Any) -> WeylAlgebra:
        return WeylAlgebra(self.coordinates, self.central, domain, self.homogenizer)


@lru_cache(maxsize=1 << 17)
def monomial_product(algebra: WeylAlgebra, left: Exps, right: Exps) -> tuple[tuple[Exps, int], ...]:
    """Normally ordered expansion of the product of two monomials.

    Uses dx^b x^a = sum_k C(b,k) a!/(a-k)! x^(a-k) dx^(b-k), variable by
    variable; in the homogenized algebra each contraction carries h^2.
    """
    m = algebra.nvars
    options = []
    for i in range(m):
        b, a = left[m + i], right[i]
        options.append(
            [(k, math.comb(b, k) * math.perm(a, k)) for k in range(min(a, b) + 1)]
        )
    base = [l + r for l, r in zip(left, right, strict=True)]
    h = algebra.h_index
    expansion = []
    for choice in itertools.product(*options):
        exps = list(base)
        coeff = 1
        contracted = 0
        for i, (k, c) in enumerate(choice):
            if k:
                exps[i] -= k
                exps[m + i] -= k
                contracted += k
            coeff *= c
        if h is not None and contracted:
            exps[h] += 2 * contracted
        expansion.append((tuple(exps), coeff))
    return tuple(expansion)


class WeylElem:
    """A normally ordered element of a Weyl algebra."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: WeylAlgebra, terms: Mapping[Exps, Any]) -> None:
        self.algebra = algebra
        self._terms: dict[Exps, Any] = {e: c for e, c in terms.items() if c}

    @property
    def terms(self) -> Mapping[Exps, Any]:
        return self._terms

    def items(self) -> Iterable[tuple[Exps, Any]]:
        return self._terms.items()

    def __iter__(self) -> Iterator[Exps]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: WeylElem) -> None:
        if other.algebra != self.algebra:
            raise AlgebraMismatch(
                f"cannot combine elements of {self.algebra.tag} and {other.algebra.tag}"
            )

    def _coerce(self, other: Any) -> WeylElem:
        if isinstance(other, WeylElem):
            self._check(other)
            return other
        return self.algebra.scalar(other)

    def __add__(self, other: Any) -> WeylElem:
        other = self._coerce(other)
        terms = dict(self._terms)
        zero = self.algebra.domain.zero
        for e, c in other.items():
            terms[e] = terms.get(e, zero) + c
        return WeylElem(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self) -> WeylElem:
        return WeylElem(self.algebra, {e: -c for e, c in self.items()})

    def __sub__(self, other: Any) -> WeylElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> WeylElem:
        return self._coerce(other) - self

    def scale(self, value: Any) -> WeylElem:
        factor = self.algebra.domain.convert(value)
        return WeylElem(self.algebra, {e: c * factor for e, c in self.items()})

    def __mul__(self, other: Any) -> WeylElem:
        if not isinstance(other, WeylElem):
            return self.scale(other)
        return weyl_mul(self, other)

    def __rmul__(self, other: Any) -> WeylElem:
        return self.scale(other)

    def __pow__(self, exponent: int) -> WeylElem:
        if exponent < 0:
            raise ValueError("negative powers are not defined")
        result = self.algebra.one
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WeylElem):
            return self.algebra == other.algebra and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.algebra, frozenset(self._terms.items())))

    def map_exponents(self, algebra: WeylAlgebra, mapping: Any) -> WeylElem:
        """Rebuild in ``algebra`` with every exponent tuple passed through ``mapping``."""
        terms: dict[Exps, Any] = {}
        zero = algebra.domain.zero
        for e, c in self.items():
            target = mapping(e)
            terms[target] = terms.get(target, zero) + c
        return WeylElem(algebra, terms)

    def to_domain(self, domain: Any) -> WeylElem:
        algebra = self.algebra.with_domain(domain)
        source = self.algebra.domain
        return WeylElem(algebra, {e: domain.convert(c, source) for e, c in self.items()})

    def sorted_terms(self) -> list[tuple[Exps, Any]]:
        return sorted(self.items(), key=lambda item: grevlex(item[0]), reverse=True)

    def __str__(self) -> str:
        return format_weyl(self)

    def __repr__(self) -> str:
        return f"WeylElem({self.algebra.tag}: {format_weyl(self)})"


def weyl_mul(left: WeylElem, right: WeylElem) -> WeylElem:
    """Normally ordered product of two elements of the same algebra."""
    left._check(right)
    algebra = left.algebra
    zero = algebra.domain.zero
    terms: dict[Exps, Any] = {}
    for e1, c1 in left.items():
        for e2, c2 in right.items():
            c12 = c1 * c2
            for e, k in monomial_product(algebra, e1, e2):
                terms[e] = terms.get(e, zero) + c12 * k
    return WeylElem(algebra, terms)


def _format_coefficient(coeff: Any, domain: Any) -> str:
    if domain == QQ:
        return format_rational(coeff)
    return f"({domain.to_sympy(coeff)})"


def format_monomial(algebra: WeylAlgebra, exps: Exps) -> str:
    factors = []
    for name, power in zip(algebra.names, exps, strict=True):
        if power == 1:
            factors.append(name)
        elif power > 1:
            factors.append(f"{name}^{power}")
    return "*".join(factors)


def format_weyl(element: WeylElem) -> str:
    """Render as ``x^2*t*dx*dt^3 - 1/2*s`` with terms in descending grevlex."""
    if not element:
        return "0"
    algebra = element.algebra
    pieces: list[str] = []
    for exps, coeff in element.sorted_terms():
        monomial = format_monomial(algebra, exps)
        negative = algebra.domain == QQ and coeff < 0
        magnitude = -coeff if negative else coeff
        text = _format_coefficient(magnitude, algebra.domain)
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
