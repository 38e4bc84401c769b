"""Monomial orders as sort keys on exponent tuples."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Literal

from sympy.polys.orderings import grevlex, lex

OrderKind = Literal["lex", "grevlex", "weight", "block"]


@dataclass(frozen=True)
class TermOrder:
    """A term order on exponent tuples of a fixed ring.

    ``weight`` compares the weight vector first and breaks ties by grevlex.
    ``block`` eliminates the variables at ``block`` positions: it compares
    grevlex on those positions first, then grevlex on the remaining ones.
    """

    kind: OrderKind = "grevlex"
    weights: tuple[Any, ...] = ()
    block: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "weight" and any(w < 0 for w in self.weights):
            raise ValueError("weight orders need non-negative weights")
        if self.kind == "block" and not self.block:
            raise ValueError("block orders need at least one eliminated position")

    def key(self, monom: tuple[int, ...]) -> Any:
        if self.kind == "grevlex":
            return grevlex(monom)
        if self.kind == "lex":
            return lex(monom)
        if self.kind == "weight":
            degree = sum(w * e for w, e in zip(self.weights, monom, strict=True))
            return (degree, grevlex(monom))
        inside = tuple(monom[i] for i in self.block)
        outside = tuple(e for i, e in enumerate(monom) if i not in self.block)
        return (grevlex(inside), grevlex(outside))

    def leading_monomial(self, monoms: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
        return max(monoms, key=self.key)

    @classmethod
    def parse(cls, name: str) -> TermOrder:
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unknown term order {name!r}")
        return cls(kind=name)  # type: ignore[arg-type]


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


def elimination_order(positions: Sequence[int]) -> TermOrder:
    return TermOrder("block", block=tuple(sorted(positions)))
