"""Weights and term orders on Weyl exponent tuples."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from sympy.polys.orderings import grevlex

from hodge_vfilt.weyl.algebra import Exps, WeylAlgebra, WeylElem


@dataclass(frozen=True)
class VWeight:
    """A weight (u, v): u_i on the coordinate x_i, v_i on its derivative.

    Central symbols weigh zero. ``u_i + v_i >= 0`` is required so that the
    weighted order becomes well-founded after homogenization.
    """

    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.u) != len(self.v):
            raise ValueError("u and v must have the same length")
        if any(a + b < 0 for a, b in zip(self.u, self.v, strict=True)):
            raise ValueError(f"weight ({self.u}, {self.v}) violates u + v >= 0")

    @classmethod
    def along(cls, algebra: WeylAlgebra, name: str = "t") -> VWeight:
        """The V-filtration weighting: t weighs -1, its derivative +1."""
        position = algebra.coordinates.index(name)
        u = tuple(-1 if i == position else 0 for i in range(algebra.nvars))
        return cls(u, tuple(-w for w in u))

    def vector(self, algebra: WeylAlgebra) -> tuple[int, ...]:
        if len(self.u) != algebra.nvars:
            raise ValueError(f"weight has {len(self.u)} entries, {algebra.tag} needs {algebra.nvars}")
        return self.u + self.v + (0,) * len(algebra.central)

    def of(self, exps: Exps, algebra: WeylAlgebra) -> int:
        return dot(self.vector(algebra), exps)


def dot(weight: Sequence[int], exps: Exps) -> int:
    return sum(w * e for w, e in zip(weight, exps) if w)


@dataclass(frozen=True)
class WeylOrder:
    """A term order key on exponent tuples of one algebra.

    Compares, in turn: the total degree on the ``eliminate`` positions, the
    ``weight`` vector (when given), then grevlex on every position not listed
    in ``ignore``; ignored positions only break the remaining ties. Only
    well-orders may be used without homogenization.
    """

    weight: tuple[int, ...] | None = None
    eliminate: tuple[int, ...] = ()
    ignore: tuple[int, ...] = ()

    @property
    def is_well_order(self) -> bool:
        return self.weight is None or all(w >= 0 for w in self.weight)

    def key(self, exps: Exps) -> Any:
        return _order_key(self, exps)

    def homogenized(self, algebra: WeylAlgebra) -> WeylOrder:
        """The same order on ``algebra.homogenized()``, blind to h in the tie-break."""
        weight = None if self.weight is None else self.weight + (0,)
        return WeylOrder(weight, self.eliminate, self.ignore + (algebra.width,))


@lru_cache(maxsize=1 << 18)
def _order_key(order: WeylOrder, exps: Exps) -> Any:
    key: tuple[Any, ...] = ()
    if order.eliminate:
        key += (sum(exps[i] for i in order.eliminate),)
    if order.weight is not None:
        key += (dot(order.weight, exps),)
    if order.ignore:
        rest = tuple(e for i, e in enumerate(exps) if i not in order.ignore)
        return key + (grevlex(rest), tuple(exps[i] for i in order.ignore))
    return key + (grevlex(exps),)


GREVLEX_WEYL = WeylOrder()


def v_order(algebra: WeylAlgebra, name: str = "t") -> WeylOrder:
    return WeylOrder(weight=VWeight.along(algebra, name).vector(algebra))


def elimination_order(algebra: WeylAlgebra, names: Sequence[str]) -> WeylOrder:
    return WeylOrder(eliminate=tuple(sorted(algebra.index(name) for name in names)))


def v_degree(element: WeylElem, weight: VWeight) -> int:
    """Largest weight among the terms of a nonzero element."""
    if not element:
        raise ValueError("the zero element has no weight")
    vector = weight.vector(element.algebra)
    return max(dot(vector, exps) for exps in element)


def initial_form(element: WeylElem, weight: VWeight) -> WeylElem:
    """Sum of the terms of maximal weight."""
    if not element:
        return element
    vector = weight.vector(element.algebra)
    top = v_degree(element, weight)
    return WeylElem(
        element.algebra,
        {e: c for e, c in element.items() if dot(vector, e) == top},
    )
