"""Tests for the commutative algebra layer: rationals, orders, ideals."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from sympy.polys.domains import QQ
from sympy.polys.groebnertools import groebner as sympy_groebner

from hodge_vfilt.errors import BudgetExceeded, CoefficientFieldMismatch, DenominatorVanishes
from hodge_vfilt.polyalg import (
    GREVLEX,
    LEX,
    Ideal,
    ParamCoefficientIdeal,
    TermOrder,
    colength,
    colon_ideal,
    eliminate,
    equal_ideals,
    groebner_basis,
    ideal_product,
    ideal_sum,
    intersect,
    leading_monomial,
    normal_form,
    polynomial_ring,
    saturate,
    specialize,
    staircase,
    to_rational,
)
from hodge_vfilt.polyalg.rationals import ceil_rational, floor_rational, format_rational


def _xy():
    ring = polynomial_ring(("x", "y"))
    x, y = ring.gens
    return ring, x, y


# rationals


@pytest.mark.parametrize(
    "value,expected",
    [
        ("5/6", QQ(5, 6)),
        (" -7 / 6 ", QQ(-7, 6)),
        ("4/2", QQ(2)),
        (3, QQ(3)),
        (Fraction(1, 3), QQ(1, 3)),
    ],
)
def test_to_rational_accepts_exact_inputs(value, expected) -> None:
    assert to_rational(value) == expected


def test_to_rational_rejects_floats_and_zero_denominators() -> None:
    with pytest.raises(ValueError, match="not a rational"):
        to_rational("1.5")
    with pytest.raises(ValueError, match="zero denominator"):
        to_rational("1/0")
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError, match="booleans"):
        to_rational(True)


def test_format_rational_and_rounding() -> None:
    assert format_rational(QQ(-7, 6)) == "-7/6"
    assert format_rational(QQ(4, 2)) == "2"
    assert ceil_rational(QQ(5, 6)) == 1
    assert ceil_rational(QQ(-5, 6)) == 0
    assert floor_rational(QQ(-1, 6)) == -1
    assert floor_rational(QQ(7, 6)) == 1


# orders and Gröbner bases


def test_leading_monomial_depends_on_order() -> None:
    _, x, y = _xy()
    p = x * y**2 + x**2
    assert leading_monomial(p, GREVLEX) == (1, 2)
    assert leading_monomial(p, LEX) == (2, 0)


def test_term_order_validation() -> None:
    with pytest.raises(ValueError, match="non-negative"):
        TermOrder("weight", weights=(1, -1))
    with pytest.raises(ValueError, match="block"):
        TermOrder("block")
    with pytest.raises(ValueError, match="unknown term order"):
        TermOrder.parse("deglex")
    assert TermOrder.parse("lex") == LEX


def test_groebner_basis_is_reduced_and_monic() -> None:
    _, x, y = _xy()
    basis = groebner_basis([2 * x**2 - 2 * y, x**3 - x])
    assert all(g.LC == 1 for g in basis)
    assert normal_form(x**3 - x, basis) == 0
    assert normal_form(x**2, basis) == y


def test_groebner_basis_respects_budget() -> None:
    _, x, y = _xy()
    with pytest.raises(BudgetExceeded, match="S-pairs") as excinfo:
        groebner_basis([x**2 - y, x**3 - x], max_pairs=0)
    assert excinfo.value.pairs == 1


def test_groebner_rejects_mixed_rings() -> None:
    _, x, _ = _xy()
    other = polynomial_ring(("z",))
    with pytest.raises(CoefficientFieldMismatch):
        groebner_basis([x, other.gens[0]])


# ideals


def test_membership_and_units() -> None:
    ring, x, y = _xy()
    ideal = Ideal(ring, [x**2, x * y])
    assert ideal.contains(x**2 * y + x**3)
    assert not ideal.contains(x)
    assert not Ideal(ring, [x * y - 1]).is_unit
    assert Ideal(ring, [x, x + 1]).is_unit
    assert Ideal(ring, [0]).is_zero


def test_ideal_rejects_generators_from_another_ring() -> None:
    ring, _, _ = _xy()
    other = polynomial_ring(("z",))
    with pytest.raises(CoefficientFieldMismatch, match="expected"):
        Ideal(ring, [other.gens[0]])


def test_sum_product_intersection_and_colon() -> None:
    ring, x, y = _xy()
    ix, iy = Ideal(ring, [x]), Ideal(ring, [y])
    assert equal_ideals(intersect(ix, iy), Ideal(ring, [x * y]))
    assert equal_ideals(ideal_product(ix, iy), Ideal(ring, [x * y]))
    assert equal_ideals(ideal_sum(ix, iy), Ideal(ring, [x, y]))
    assert equal_ideals(colon_ideal(Ideal(ring, [x * y]), ix), iy)
    assert colon_ideal(ix, Ideal(ring)).is_unit


def test_saturation_stabilizes() -> None:
    ring, x, y = _xy()
    saturated = saturate(Ideal(ring, [x * y**2, x**2 * y]), x)
    assert equal_ideals(saturated, Ideal(ring, [y]))
    with pytest.raises(ValueError, match="zero polynomial"):
        saturate(Ideal(ring, [x]), ring.zero)


def test_staircase_and_colength() -> None:
    ring, x, y = _xy()
    ideal = Ideal(ring, [x**2, y**2])
    assert sorted(staircase(ideal)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert staircase(Ideal(ring, [x])) is None
    assert colength(ideal) == 4
    assert colength(Ideal(ring, [x])) == math.inf
    cusp_limit = Ideal(ring, [y**5, x * y**3, x**3, x**2 * y])
    assert colength(cusp_limit) == 9


def test_eliminate_twisted_cubic_projection() -> None:
    ring = polynomial_ring(("t", "x", "y"))
    t, x, y = ring.gens
    image = eliminate(Ideal(ring, [x - t**2, y - t**3]), ["t"])
    assert [str(s) for s in image.ring.symbols] == ["x", "y"]
    a, b = image.ring.gens
    assert equal_ideals(image, Ideal(image.ring, [a**3 - b**2]))


def test_specialize_parametric_ideal() -> None:
    ring = polynomial_ring(("beta", "x"))
    beta, x = ring.gens
    family = ParamCoefficientIdeal.polynomial(ring, "beta", [beta * x - 1])
    fiber = specialize(family, 2)
    (xf,) = fiber.ring.gens
    assert fiber.contains(xf - QQ(1, 2))

    poles = ParamCoefficientIdeal(ring, "beta", (x,), (beta - 1,))
    with pytest.raises(DenominatorVanishes, match="beta = 1"):
        specialize(poles, 1)


def test_param_coefficient_ideal_needs_matching_denominators() -> None:
    ring = polynomial_ring(("beta", "x"))
    with pytest.raises(ValueError, match="denominator"):
        ParamCoefficientIdeal(ring, "beta", (ring.gens[1],), ())


# randomized checks against sympy


def _random_poly(rng: random.Random, ring, degree: int = 3, terms: int = 3):
    poly = ring.zero
    for _ in range(rng.randint(1, terms)):
        monom = [0] * ring.ngens
        for _ in range(rng.randint(0, degree)):
            monom[rng.randrange(ring.ngens)] += 1
        poly += ring.from_dict({tuple(monom): QQ(rng.choice([-3, -2, -1, 1, 2, 3]))})
    return poly


def _random_ideal(rng: random.Random):
    ring = polynomial_ring(("x", "y", "z")[: rng.randint(1, 3)])
    gens: list = []
    while not gens:
        gens = [g for g in (_random_poly(rng, ring) for _ in range(rng.randint(1, 3))) if g]
    return ring, gens


def _terms(basis) -> set:
    return {frozenset(g.items()) for g in basis}


@pytest.mark.slow
def test_groebner_basis_matches_sympy() -> None:
    rng = random.Random(1729)
    for _ in range(25):
        ring, gens = _random_ideal(rng)
        reference = [g.monic() for g in sympy_groebner(gens, ring)]
        assert _terms(groebner_basis(gens)) == _terms(reference), gens


@pytest.mark.slow
def test_membership_agrees_with_sympy_division() -> None:
    rng = random.Random(4104)
    for _ in range(25):
        ring, gens = _random_ideal(rng)
        ideal = Ideal(ring, gens)
        reference = sympy_groebner(gens, ring)
        combination = sum((_random_poly(rng, ring, 2) * g for g in gens), ring.zero)
        assert ideal.contains(combination)
        candidate = _random_poly(rng, ring)
        assert ideal.contains(candidate) == (not candidate.rem(reference))


@pytest.mark.slow
def test_equal_ideals_is_an_equivalence() -> None:
    rng = random.Random(561)
    for _ in range(20):
        ring, gens = _random_ideal(rng)
        combination = sum((_random_poly(rng, ring, 1) * g for g in gens), ring.zero)
        first = Ideal(ring, gens)
        second = Ideal(ring, [*reversed(gens), combination])
        third = Ideal(ring, groebner_basis(gens))
        assert equal_ideals(first, first)
        assert equal_ideals(first, second) and equal_ideals(second, first)
        assert equal_ideals(second, third) and equal_ideals(first, third)
        extra = ring.gens[0] ** 5 + 1
        assert equal_ideals(first, Ideal(ring, [*gens, extra])) == first.contains(extra)
