"""Both sides of the Malgrange isomorphism for M = O_X(*D), D = div(f).

``SFsElem`` models M[s]f^s: a numerator N(x, s) over a power of f, standing
for (N / f^e) * f^s. ``GraphElem`` models the graph pushforward
sum_l (g_l / f^e) (x) dt^l. ``rho`` and ``rho_inv`` translate between them;
``act`` applies Weyl operators on either side.

No fractional powers are ever formed: f^s and f^(-alpha) are formal tags.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing

from hodge_vfilt.errors import AlgebraMismatch, ConstantF, NotInHodgePiece
from hodge_vfilt.polyalg.ideal import generator, polynomial_ring
from hodge_vfilt.polyalg.rationals import RationalLike, format_rational, to_rational
from hodge_vfilt.weyl.algebra import WeylAlgebra, WeylElem

RESERVED = frozenset({"s", "t", "dt", "beta", "u", "h"})


class Hypersurface:
    """A nonconstant polynomial f together with the rings built around it."""

    def __init__(self, f: PolyElement) -> None:
        if f.is_ground:
            raise ConstantF(f"f = {f.as_expr()} is constant")
        self.f = f
        self.ring: PolyRing = f.ring
        self.variables: tuple[str, ...] = tuple(str(x) for x in f.ring.symbols)
        self.s_ring = polynomial_ring((*self.variables, "s"))
        self.s = generator(self.s_ring, "s")
        self.f_s = f.set_ring(self.s_ring)

    @cached_property
    def partials(self) -> dict[str, PolyElement]:
        return {name: self.f.diff(generator(self.ring, name)) for name in self.variables}

    @cached_property
    def graph_algebra(self) -> WeylAlgebra:
        """D_{n+1} on the coordinates and t."""
        return WeylAlgebra((*self.variables, "t"))

    @cached_property
    def s_algebra(self) -> WeylAlgebra:
        """D_n[s]."""
        return WeylAlgebra(self.variables, ("s",))

    @property
    def degree(self) -> int:
        return max(sum(m) for m in self.f.itermonoms())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Hypersurface) and self.f == other.f

    def __hash__(self) -> int:
        return hash(self.f)

    def __repr__(self) -> str:
        return f"Hypersurface({self.f.as_expr()})"


def _strip_f(numerators: list[PolyElement], power: int, f: PolyElement) -> tuple[list[PolyElement], int]:
    while power > 0:
        quotients = []
        for numerator in numerators:
            q, r = numerator.div(f)
            if r:
                return numerators, power
            quotients.append(q)
        numerators = quotients
        power -= 1
    return numerators, power


@dataclass(frozen=True)
class LocalizedPoly:
    """numerator / f^f_power in O_X(*D), with no removable factor of f."""

    numerator: PolyElement
    f_power: int
    f: PolyElement = field(repr=False, compare=False)

    @classmethod
    def make(cls, numerator: PolyElement, f_power: int, f: PolyElement) -> LocalizedPoly:
        if not numerator:
            return cls(numerator, 0, f)
        (numerator,), f_power = _strip_f([numerator], f_power, f)
        return cls(numerator, f_power, f)

    @property
    def is_polynomial(self) -> bool:
        return self.f_power == 0

    def __str__(self) -> str:
        text = str(self.numerator.as_expr())
        if self.f_power == 0:
            return text
        power = "f" if self.f_power == 1 else f"f^{self.f_power}"
        return f"({text})/{power}"


@dataclass(frozen=True)
class TwistedSection:
    """A section of O_X(*D) carrying the formal tag f^(-alpha)."""

    section: LocalizedPoly
    alpha: Any

    def __str__(self) -> str:
        return f"{self.section}*f^(-{format_rational(self.alpha)})"


class SFsElem:
    """(numerator / f^f_power) * f^s with numerator in Q[x, s]."""

    __slots__ = ("hypersurface", "numerator", "f_power")

    def __init__(self, hypersurface: Hypersurface, numerator: PolyElement, f_power: int = 0) -> None:
        numerator = numerator.set_ring(hypersurface.s_ring)
        if numerator:
            (numerator,), f_power = _strip_f([numerator], f_power, hypersurface.f_s)
        else:
            f_power = 0
        self.hypersurface = hypersurface
        self.numerator = numerator
        self.f_power = f_power

    @classmethod
    def from_coefficients(
        cls, hypersurface: Hypersurface, coefficients: Mapping[int, LocalizedPoly]
    ) -> SFsElem:
        """Build sum_j u_j s^j f^s from its coefficients u_j."""
        power = max((u.f_power for u in coefficients.values()), default=0)
        f, s = hypersurface.f_s, hypersurface.s
        numerator = hypersurface.s_ring.zero
        for j, u in coefficients.items():
            lifted = u.numerator.set_ring(hypersurface.s_ring)
            numerator += lifted * f ** (power - u.f_power) * s**j
        return cls(hypersurface, numerator, power)

    @property
    def coefficients(self) -> dict[int, LocalizedPoly]:
        """The u_j with self = sum_j u_j s^j f^s."""
        hs = self.hypersurface
        position = hs.s_ring.ngens - 1
        grouped: dict[int, dict[tuple[int, ...], Any]] = {}
        for monom, coeff in self.numerator.iterterms():
            grouped.setdefault(monom[position], {})[monom[:position]] = coeff
        return {
            j: LocalizedPoly.make(hs.ring.from_dict(terms), self.f_power, hs.f)
            for j, terms in sorted(grouped.items())
        }

    def _combine(self, other: SFsElem, sign: int) -> SFsElem:
        if other.hypersurface != self.hypersurface:
            raise AlgebraMismatch("elements over different hypersurfaces")
        f = self.hypersurface.f_s
        power = max(self.f_power, other.f_power)
        numerator = self.numerator * f ** (power - self.f_power) + sign * (
            other.numerator * f ** (power - other.f_power)
        )
        return SFsElem(self.hypersurface, numerator, power)

    def __add__(self, other: SFsElem) -> SFsElem:
        return self._combine(other, 1)

    def __sub__(self, other: SFsElem) -> SFsElem:
        return self._combine(other, -1)

    def scale(self, factor: PolyElement | RationalLike) -> SFsElem:
        if isinstance(factor, PolyElement):
            factor = factor.set_ring(self.hypersurface.s_ring)
        else:
            factor = self.hypersurface.s_ring(to_rational(factor))
        return SFsElem(self.hypersurface, self.numerator * factor, self.f_power)

    def __bool__(self) -> bool:
        return bool(self.numerator)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SFsElem):
            return NotImplemented
        return (
            self.hypersurface == other.hypersurface
            and self.numerator == other.numerator
            and self.f_power == other.f_power
        )

    def __hash__(self) -> int:
        return hash((self.hypersurface, self.numerator, self.f_power))

    # generator actions

    def apply(self, name: str) -> SFsElem:
        hs = self.hypersurface
        ring = hs.s_ring
        n, e, f, s = self.numerator, self.f_power, hs.f_s, hs.s
        if name == "s":
            return SFsElem(hs, n * s, e)
        if name == "t":
            return SFsElem(hs, n.compose(s, s + 1) * f, e)
        if name == "dt":
            return SFsElem(hs, -s * n.compose(s, s - 1), e + 1)
        if name in hs.variables:
            return SFsElem(hs, n * generator(ring, name), e)
        if name.startswith("d") and name[1:] in hs.variables:
            x = generator(ring, name[1:])
            fi = hs.partials[name[1:]].set_ring(ring)
            return SFsElem(hs, n.diff(x) * f - e * n * fi + s * n * fi, e + 1)
        raise AlgebraMismatch(f"{name!r} does not act on M[s]f^s")

    def __str__(self) -> str:
        numerator = str(self.numerator.as_expr())
        if self.f_power == 0:
            return f"({numerator})*f^s"
        power = "f" if self.f_power == 1 else f"f^{self.f_power}"
        return f"({numerator}/{power})*f^s"

    def __repr__(self) -> str:
        return f"SFsElem({self})"


class GraphElem:
    """sum_l (coeffs[l] / f^f_power) (x) dt^l in the graph pushforward."""

    __slots__ = ("hypersurface", "coeffs", "f_power")

    def __init__(
        self,
        hypersurface: Hypersurface,
        coeffs: Mapping[int, PolyElement],
        f_power: int = 0,
    ) -> None:
        ring = hypersurface.ring
        levels = sorted(level for level, g in coeffs.items() if g)
        if any(level < 0 for level in levels):
            raise ValueError("dt levels must be non-negative")
        polys = [coeffs[level].set_ring(ring) for level in levels]
        if polys:
            polys, f_power = _strip_f(polys, f_power, hypersurface.f)
        else:
            f_power = 0
        self.hypersurface = hypersurface
        self.coeffs: dict[int, PolyElement] = dict(zip(levels, polys, strict=True))
        self.f_power = f_power

    @classmethod
    def delta(cls, hypersurface: Hypersurface) -> GraphElem:
        """The class of 1 (x) 1."""
        return cls(hypersurface, {0: hypersurface.ring.one})

    @property
    def level(self) -> int:
        """Highest dt power present, -1 for zero."""
        return max(self.coeffs, default=-1)

    @property
    def is_polynomial(self) -> bool:
        return self.f_power == 0

    def coefficient(self, level: int) -> LocalizedPoly:
        hs = self.hypersurface
        return LocalizedPoly.make(self.coeffs.get(level, hs.ring.zero), self.f_power, hs.f)

    def _combine(self, other: GraphElem, sign: int) -> GraphElem:
        if other.hypersurface != self.hypersurface:
            raise AlgebraMismatch("elements over different hypersurfaces")
        f = self.hypersurface.f
        power = max(self.f_power, other.f_power)
        coeffs: dict[int, PolyElement] = {}
        for level, g in self.coeffs.items():
            coeffs[level] = g * f ** (power - self.f_power)
        for level, g in other.coeffs.items():
            term = sign * g * f ** (power - other.f_power)
            coeffs[level] = coeffs[level] + term if level in coeffs else term
        return GraphElem(self.hypersurface, coeffs, power)

    def __add__(self, other: GraphElem) -> GraphElem:
        return self._combine(other, 1)

    def __sub__(self, other: GraphElem) -> GraphElem:
        return self._combine(other, -1)

    def scale(self, factor: PolyElement | RationalLike) -> GraphElem:
        ring = self.hypersurface.ring
        if isinstance(factor, PolyElement):
            factor = factor.set_ring(ring)
        else:
            factor = ring(to_rational(factor))
        return GraphElem(
            self.hypersurface,
            {level: g * factor for level, g in self.coeffs.items()},
            self.f_power,
        )

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphElem):
            return NotImplemented
        return (
            self.hypersurface == other.hypersurface
            and self.coeffs == other.coeffs
            and self.f_power == other.f_power
        )

    def __hash__(self) -> int:
        return hash((self.hypersurface, tuple(sorted(self.coeffs.items())), self.f_power))

    # generator actions

    def apply(self, name: str) -> GraphElem:
        hs = self.hypersurface
        ring, f, e = hs.ring, hs.f, self.f_power
        out: dict[int, PolyElement] = {}

        def add(level: int, value: PolyElement) -> None:
            out[level] = out[level] + value if level in out else value

        if name == "dt":
            return GraphElem(hs, {level + 1: g for level, g in self.coeffs.items()}, e)
        if name == "t":
            for level, g in self.coeffs.items():
                add(level, f * g)
                if level:
                    add(level - 1, -level * g)
            return GraphElem(hs, out, e)
        if name == "s":
            return self.apply("t").apply("dt").scale(-1)
        if name in hs.variables:
            x = generator(ring, name)
            return GraphElem(hs, {level: x * g for level, g in self.coeffs.items()}, e)
        if name.startswith("d") and name[1:] in hs.variables:
            x = generator(ring, name[1:])
            fi = hs.partials[name[1:]]
            for level, g in self.coeffs.items():
                add(level, g.diff(x) * f - e * g * fi)
                add(level + 1, -fi * g * f)
            return GraphElem(hs, out, e + 1)
        raise AlgebraMismatch(f"{name!r} does not act on the graph pushforward")

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for level, g in sorted(self.coeffs.items()):
            text = f"({g.as_expr()})"
            if level == 1:
                text += "*dt"
            elif level > 1:
                text += f"*dt^{level}"
            pieces.append(text)
        body = " + ".join(pieces)
        if self.f_power:
            power = "f" if self.f_power == 1 else f"f^{self.f_power}"
            return f"({body})/{power}"
        return body

    def __repr__(self) -> str:
        return f"GraphElem({self})"


Module = SFsElem | GraphElem


def act(operator: WeylElem, element: Module) -> Module:
    """Apply a Weyl operator, term by term, rightmost factor first.

    Raises:
        AlgebraMismatch: the operator's algebra does not act on the element.
    """
    hs = element.hypersurface
    algebra = operator.algebra
    allowed = set(hs.variables) | {"t", "s"}
    if not set(algebra.coordinates) | set(algebra.central) <= allowed:
        raise AlgebraMismatch(f"{algebra.tag} does not act on modules over {hs}")
    if algebra.domain != QQ:
        raise AlgebraMismatch("only rational operators act on these modules")

    names = algebra.names
    result: Module | None = None
    for exps, coeff in operator.items():
        current = element
        for position in reversed(range(len(names))):
            for _ in range(exps[position]):
                current = current.apply(names[position])
        term = current.scale(coeff)
        result = term if result is None else result + term
    if result is None:
        return element.scale(0)
    return result


def rho(element: SFsElem) -> GraphElem:
    """u s^j f^s  ->  (-dt t)^j (u (x) 1)."""
    hs = element.hypersurface
    result = GraphElem(hs, {})
    for j, u in element.coefficients.items():
        image = GraphElem(hs, {0: u.numerator}, u.f_power)
        for _ in range(j):
            image = image.apply("s")
        result = result + image
    return result


def rho_inv(element: GraphElem) -> SFsElem:
    """u (x) dt^j  ->  (u / f^j) prod_{i<j} (i - s) f^s."""
    hs = element.hypersurface
    f, s = hs.f_s, hs.s
    top = max(element.level, 0)
    numerator = hs.s_ring.zero
    for level, g in element.coeffs.items():
        factor = hs.s_ring.one
        for i in range(level):
            factor *= i - s
        numerator += g.set_ring(hs.s_ring) * f ** (top - level) * factor
    return SFsElem(hs, numerator, element.f_power + top)


def ev(element: SFsElem, alpha: RationalLike) -> TwistedSection:
    """Substitute s = -alpha, keeping f^(-alpha) as a formal tag."""
    hs = element.hypersurface
    point = to_rational(alpha)
    value = element.numerator.evaluate(hs.s, -point).set_ring(hs.ring)
    return TwistedSection(LocalizedPoly.make(value, element.f_power, hs.f), point)


def hodge_normalize(element: GraphElem, k: int, alpha: RationalLike) -> PolyElement:
    """The generator h with ev(rho_inv(element), alpha) * f^k = h * f^(-alpha).

    Raises:
        NotInHodgePiece: the element is not in F_{k+1}, i.e. it has a pole
            along f or a dt level above k.
    """
    if not element.is_polynomial or element.level > k:
        raise NotInHodgePiece(f"{element} is not in F_{k + 1} of the pushforward")
    hs = element.hypersurface
    point = to_rational(alpha)
    result = hs.ring.zero
    for level, g in element.coeffs.items():
        weight = QQ.one
        for i in range(level):
            weight *= point + i
        result += g * hs.f ** (k - level) * weight
    return result


@dataclass(frozen=True)
class HodgePieceBasis:
    """F_{k+1} of the pushforward, in dt powers and in binomials of s.

    rho_inv(u (x) dt^l) = (-1)^l l! binom(s, l) (u / f^l) f^s, so the change of
    basis between {dt^l} and {binom(s, l) f^(s-l)} is diagonal.
    """

    k: int

    def change_matrix(self) -> list[list[Any]]:
        size = self.k + 1
        return [
            [QQ((-1) ** i * math.factorial(i)) if i == j else QQ.zero for j in range(size)]
            for i in range(size)
        ]

    def contains(self, element: GraphElem) -> bool:
        return element.is_polynomial and element.level <= self.k

    def to_binomial(self, element: GraphElem) -> dict[int, PolyElement]:
        """Coefficients c_l with element = sum_l c_l binom(s, l) f^(s-l)."""
        if not self.contains(element):
            raise NotInHodgePiece(f"{element} is not in F_{self.k + 1}")
        matrix = self.change_matrix()
        return {level: g * matrix[level][level] for level, g in element.coeffs.items()}

    def from_binomial(
        self, hypersurface: Hypersurface, coefficients: Mapping[int, PolyElement]
    ) -> GraphElem:
        matrix = self.change_matrix()
        if any(level > self.k for level in coefficients):
            raise NotInHodgePiece(f"binomial levels exceed {self.k}")
        return GraphElem(
            hypersurface,
            {level: c * (QQ.one / matrix[level][level]) for level, c in coefficients.items()},
        )


def graph_element(
    hypersurface: Hypersurface, coefficients: Iterable[PolyElement]
) -> GraphElem:
    """sum_l g_l (x) dt^l from the list g_0, g_1, ..."""
    return GraphElem(hypersurface, dict(enumerate(coefficients)))
