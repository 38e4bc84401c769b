"""Sparse exact linear algebra over a field.

Vectors are mappings from arbitrary hashable row keys to field elements, so
callers can index rows by monomials. Row reduction is delegated to sympy's
``DomainMatrix`` in sparse format.
"""

from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from sympy.polys.matrices import DomainMatrix

SparseVector = Mapping[Hashable, Any]


@dataclass(frozen=True)
class Echelon:
    """Reduced row echelon form of a list of columns.

    ``rows`` holds the nonzero rows of the RREF as ``{column: entry}`` maps,
    ``pivots`` the pivot column of each of those rows.
    """

    ncols: int
    rows: tuple[dict[int, Any], ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def is_pivot(self, column: int) -> bool:
        return column in self.pivots

    def expression(self, column: int) -> dict[int, Any]:
        """Coefficients writing a non-pivot column through the pivot columns."""
        return {
            pivot: row[column]
            for pivot, row in zip(self.pivots, self.rows, strict=True)
            if column in row
        }


def _matrix(columns: Sequence[SparseVector], domain: Any) -> DomainMatrix | None:
    row_index: dict[Hashable, int] = {}
    dod: dict[int, dict[int, Any]] = {}
    for j, column in enumerate(columns):
        for key, value in column.items():
            if not value:
                continue
            i = row_index.setdefault(key, len(row_index))
            dod.setdefault(i, {})[j] = domain.convert(value)
    if not row_index:
        return None
    return DomainMatrix(dod, (len(row_index), len(columns)), domain)


def echelon(columns: Sequence[SparseVector], domain: Any) -> Echelon:
    matrix = _matrix(columns, domain)
    if matrix is None:
        return Echelon(ncols=len(columns), rows=(), pivots=())
    reduced, pivots = matrix.rref()
    dod = reduced.to_sparse().to_dod()
    rows = tuple(dict(dod.get(i, {})) for i in range(len(pivots)))
    return Echelon(ncols=len(columns), rows=rows, pivots=tuple(pivots))


def nullspace(columns: Sequence[SparseVector], domain: Any) -> list[list[Any]]:
    """Basis of the relations sum_j c_j columns[j] = 0, as dense vectors."""
    form = echelon(columns, domain)
    basis = []
    for free in range(form.ncols):
        if form.is_pivot(free):
            continue
        vector = [domain.zero] * form.ncols
        vector[free] = domain.one
        for pivot, entry in form.expression(free).items():
            vector[pivot] = -entry
        basis.append(vector)
    return basis


def solve(
    columns: Sequence[SparseVector], target: SparseVector, domain: Any
) -> list[Any] | None:
    """One solution of sum_j x_j columns[j] = target, or None if inconsistent.

    Free variables are set to zero.
    """
    form = echelon([*columns, target], domain)
    last = len(columns)
    if form.is_pivot(last):
        return None
    solution = [domain.zero] * len(columns)
    for pivot, entry in form.expression(last).items():
        solution[pivot] = entry
    return solution


def span_coefficients(
    basis: Sequence[SparseVector],
    candidates: Sequence[SparseVector],
    domain: Any,
) -> list[list[Any] | None]:
    """For each candidate, coefficients over ``basis`` reaching it, or None.

    All candidates are decided by one row reduction of ``basis + candidates``.
    """
    form = echelon([*basis, *candidates], domain)
    size = len(basis)
    decided: list[list[Any] | None] = []
    for offset in range(len(candidates)):
        column = size + offset
        if form.is_pivot(column):
            decided.append(None)
            continue
        expression = form.expression(column)
        if any(pivot >= size for pivot in expression):
            decided.append(None)
            continue
        coefficients = [domain.zero] * size
        for pivot, entry in expression.items():
            coefficients[pivot] = entry
        decided.append(coefficients)
    return decided
