"""Tests for Weyl algebra arithmetic, weights and left Gröbner bases."""

from __future__ import annotations

import random

import pytest
from sympy.polys.domains import QQ

from hodge_vfilt.errors import AlgebraMismatch
from hodge_vfilt.polyalg import polynomial_ring
from hodge_vfilt.weyl import (
    VWeight,
    WeylAlgebra,
    WeylElem,
    format_weyl,
    initial_form,
    normal_form_with_cofactors,
    v_adapted_normal_form,
    v_degree,
    weyl_groebner,
    weyl_membership,
)


def _d1() -> WeylAlgebra:
    return WeylAlgebra(("x",))


def _graph_of_x() -> WeylAlgebra:
    return WeylAlgebra(("x", "t"))


def test_commutation_relation() -> None:
    algebra = _d1()
    x, dx = algebra.gen("x"), algebra.gen("dx")
    assert dx * x == x * dx + 1
    assert dx * x - x * dx == algebra.one
    assert format_weyl(dx * x) == "x*dx + 1"


def test_powers_follow_leibniz() -> None:
    algebra = _d1()
    x, dx = algebra.gen("x"), algebra.gen("dx")
    # dx^2 x = x dx^2 + 2 dx
    assert dx**2 * x == x * dx**2 + 2 * dx
    with pytest.raises(ValueError, match="negative"):
        dx ** (-1)


def test_homogenized_relation_carries_h_squared() -> None:
    algebra = _d1().homogenized()
    x, dx, h = algebra.gen("x"), algebra.gen("dx"), algebra.gen("h")
    assert dx * x == x * dx + h**2
    assert algebra.dehomogenized() == _d1()


def test_central_symbols_commute() -> None:
    algebra = WeylAlgebra(("x",), ("s",))
    x, dx, s = algebra.gen("x"), algebra.gen("dx"), algebra.gen("s")
    assert s * dx == dx * s
    assert s * x == x * s
    assert algebra.tag == "D_1[s]"


def test_algebra_validation_and_tags() -> None:
    with pytest.raises(ValueError, match="duplicate"):
        WeylAlgebra(("x", "x"))
    with pytest.raises(ValueError, match="homogenizer"):
        WeylAlgebra(("x",), (), homogenizer="h")
    assert WeylAlgebra(("x", "y", "t")).tag == "D_3"
    assert _d1().tag == "D_1"
    with pytest.raises(KeyError, match="not a generator"):
        _d1().gen("y")


def test_mixing_algebras_is_rejected() -> None:
    with pytest.raises(AlgebraMismatch, match="cannot combine"):
        _d1().gen("x") + WeylAlgebra(("y",)).gen("y")


def test_v_weight_along_t() -> None:
    algebra = _graph_of_x()
    weight = VWeight.along(algebra)
    t, dt, x = algebra.gen("t"), algebra.gen("dt"), algebra.gen("x")
    assert weight.u == (0, -1)
    assert weight.v == (0, 1)
    assert v_degree(t * dt, weight) == 0
    assert v_degree(x * dt, weight) == 1
    assert initial_form(t + dt + x, weight) == dt
    with pytest.raises(ValueError, match="u \\+ v >= 0"):
        VWeight((-1,), (0,))


def test_left_ideal_membership() -> None:
    algebra = _d1()
    x, dx = algebra.gen("x"), algebra.gen("dx")
    basis = weyl_groebner([dx])
    assert weyl_membership(x * dx, basis)
    # dx x = x dx + 1 leaves the remainder 1
    assert not weyl_membership(dx * x, basis)


def test_cofactors_reconstruct_the_element() -> None:
    algebra = _d1()
    x, dx = algebra.gen("x"), algebra.gen("dx")
    element = x**2 * dx + x
    remainder, multipliers = normal_form_with_cofactors(element, [dx])
    assert remainder == x
    assert multipliers[0] * dx + remainder == element


def test_v_adapted_normal_form_drops_low_weights() -> None:
    # graph ideal of f = x: t - x and dx + dt
    algebra = _graph_of_x()
    t, x = algebra.gen("t"), algebra.gen("x")
    dt, dx = algebra.gen("dt"), algebra.gen("dx")
    weight = VWeight.along(algebra)
    basis = weyl_groebner([t - x, dx + dt], weight)
    # dt = -dx modulo the ideal, and dx has weight 0
    assert not v_adapted_normal_form(dt, basis, weight, floor=0)
    assert v_adapted_normal_form(dt, basis, weight, floor=-1)


def _random_operator(rng: random.Random, algebra: WeylAlgebra, degree: int = 3) -> WeylElem:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        exps = [0] * algebra.width
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(algebra.width)] += 1
        terms[tuple(exps)] = QQ(rng.randint(-5, 5), rng.randint(1, 4))
    return algebra.element({e: c for e, c in terms.items() if c})


def test_multiplication_is_associative() -> None:
    rng = random.Random(7)
    algebra = WeylAlgebra(("x", "y"))
    for _ in range(200):
        p, q, r = (_random_operator(rng, algebra) for _ in range(3))
        assert (p * q) * r == p * (q * r)


def test_derivations_commute_with_polynomials_by_differentiating() -> None:
    rng = random.Random(11)
    algebra = WeylAlgebra(("x", "y"))
    ring = polynomial_ring(("x", "y"))
    for _ in range(100):
        p = ring.from_dict(
            {
                (rng.randint(0, 3), rng.randint(0, 3)): QQ(rng.randint(-5, 5), rng.randint(1, 4))
                for _ in range(rng.randint(1, 4))
            }
        )
        lifted = algebra.from_polynomial(p)
        for name, x in zip(("x", "y"), ring.gens, strict=True):
            d = algebra.gen(f"d{name}")
            assert d * lifted - lifted * d == algebra.from_polynomial(p.diff(x))
        q = algebra.from_polynomial(p**2 + 1)
        assert lifted * q == q * lifted
