"""Tests for polynomials in s and the b-function factor rendering."""

from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from hodge_vfilt.polyalg.univariate import (
    UnivariatePoly,
    format_factored,
    rational_roots,
    root_multiset,
)


def _cusp_b() -> UnivariatePoly:
    return UnivariatePoly.from_roots([-1, QQ(-5, 6), QQ(-7, 6)])


def test_from_roots_and_evaluation() -> None:
    b = _cusp_b()
    assert b.degree == 3
    assert b(-1) == 0
    assert b(QQ(-5, 6)) == 0
    assert b(0) == QQ(35, 36)


def test_trailing_zeros_are_dropped() -> None:
    assert UnivariatePoly((1, 2, 0, 0)).degree == 1
    assert UnivariatePoly(()).is_zero


def test_rational_roots_split_off_linear_factors() -> None:
    decomposition = rational_roots(_cusp_b())
    assert decomposition.roots == (QQ(-5, 6), -1, QQ(-7, 6))
    assert decomposition.is_split


def test_rational_roots_keep_irreducible_cofactor() -> None:
    # (s + 1)(s^2 + 1)
    p = UnivariatePoly((1, 1, 1, 1))
    decomposition = rational_roots(p)
    assert decomposition.roots == (-1,)
    assert not decomposition.is_split
    assert decomposition.cofactor.degree == 2


def test_rational_roots_rejects_zero() -> None:
    with pytest.raises(ValueError, match="zero polynomial"):
        rational_roots(UnivariatePoly(()))


def test_shift_reflect_and_divide() -> None:
    p = UnivariatePoly.from_roots([-1])
    assert p.shift(1) == UnivariatePoly.from_roots([-2])
    # s -> -s - 1 sends the root -1 to 0
    assert p.reflect().monic() == UnivariatePoly.from_roots([0])
    assert _cusp_b().divide_root(-1) == UnivariatePoly.from_roots([QQ(-5, 6), QQ(-7, 6)])
    with pytest.raises(ValueError, match="not a root"):
        p.divide_root(2)


def test_format_factored_puts_s_plus_one_first() -> None:
    assert format_factored([QQ(-7, 6), -1, QQ(-5, 6)]) == "(s+1)(s+5/6)(s+7/6)"
    assert format_factored([-1, -1]) == "(s+1)^2"
    assert format_factored([QQ(-1, 2), -1]) == "(s+1)(s+1/2)"
    assert format_factored([0, 2]) == "(s-2)s"
    assert format_factored([]) == "1"


def test_root_multiset_counts_largest_first() -> None:
    assert root_multiset([-1, QQ(-1, 2), -1]) == [(QQ(-1, 2), 1), (-1, 2)]
