"""Tests for M[s]f^s, the graph pushforward and the maps between them."""

from __future__ import annotations

import random

import pytest
from sympy.polys.domains import QQ

from hodge_vfilt.errors import AlgebraMismatch, ConstantF, NotInHodgePiece
from hodge_vfilt.graphmod import (
    GraphElem,
    HodgePieceBasis,
    Hypersurface,
    SFsElem,
    act,
    ev,
    graph_element,
    hodge_normalize,
    rho,
    rho_inv,
)
from hodge_vfilt.polyalg import polynomial_ring
from hodge_vfilt.weyl import WeylAlgebra


def _cusp() -> Hypersurface:
    ring = polynomial_ring(("x", "y"))
    x, y = ring.gens
    return Hypersurface(x**2 + y**3)


def _smooth() -> Hypersurface:
    ring = polynomial_ring(("x",))
    return Hypersurface(ring.gens[0])


def test_constant_f_is_rejected() -> None:
    ring = polynomial_ring(("x",))
    with pytest.raises(ConstantF, match="constant"):
        Hypersurface(ring(3))


def test_hypersurface_data() -> None:
    hs = _cusp()
    x, y = hs.ring.gens
    assert hs.variables == ("x", "y")
    assert hs.degree == 3
    assert hs.partials == {"x": 2 * x, "y": 3 * y**2}
    assert hs.graph_algebra.tag == "D_3"
    assert hs.s_algebra.tag == "D_2[s]"


def test_generator_actions_on_delta() -> None:
    hs = _cusp()
    x, y = hs.ring.gens
    delta = GraphElem.delta(hs)
    assert delta.apply("t") == GraphElem(hs, {0: hs.f})
    assert delta.apply("dt") == GraphElem(hs, {1: hs.ring.one})
    # s = -dt t, so s delta = -f dt delta
    assert delta.apply("s") == GraphElem(hs, {1: -hs.f})
    # dx delta = -f_x dt delta
    assert delta.apply("dx") == GraphElem(hs, {1: -2 * x})
    assert delta.apply("y") == GraphElem(hs, {0: y})
    with pytest.raises(AlgebraMismatch, match="does not act"):
        delta.apply("dz")


def test_graph_element_strips_common_f_factors() -> None:
    hs = _smooth()
    (x,) = hs.ring.gens
    element = GraphElem(hs, {0: x**2, 1: x}, f_power=1)
    assert element.f_power == 0
    assert element.coeffs == {0: x, 1: hs.ring.one}
    with pytest.raises(ValueError, match="non-negative"):
        GraphElem(hs, {-1: x})


def test_act_applies_rightmost_factor_first() -> None:
    hs = _smooth()
    algebra = hs.graph_algebra
    t, dt = algebra.gen("t"), algebra.gen("dt")
    delta = GraphElem.delta(hs)
    # (t dt - dt t) delta = -delta
    assert act(t * dt - dt * t, delta) == delta.scale(-1)
    with pytest.raises(AlgebraMismatch):
        act(WeylAlgebra(("z",)).gen("z"), delta)


def test_rho_sends_s_to_minus_dt_t() -> None:
    hs = _cusp()
    s_fs = SFsElem(hs, hs.s)
    assert rho(s_fs) == GraphElem(hs, {1: -hs.f})
    assert rho_inv(rho(s_fs)) == s_fs


def test_rho_inv_of_dt_delta() -> None:
    hs = _smooth()
    image = rho_inv(GraphElem(hs, {1: hs.ring.one}))
    # dt delta -> -s f^(s-1)
    assert image.numerator == -hs.s
    assert image.f_power == 1


def test_ev_keeps_the_twist_formal() -> None:
    hs = _smooth()
    twisted = ev(rho_inv(GraphElem(hs, {1: hs.ring.one})), QQ(1, 2))
    assert twisted.alpha == QQ(1, 2)
    assert twisted.section.numerator == hs.ring(QQ(1, 2))
    assert twisted.section.f_power == 1


def test_hodge_normalize() -> None:
    hs = _cusp()
    x, y = hs.ring.gens
    element = graph_element(hs, [y, x])
    # h = y f^1 + x * alpha
    assert hodge_normalize(element, 1, QQ(5, 6)) == y * hs.f + QQ(5, 6) * x
    with pytest.raises(NotInHodgePiece):
        hodge_normalize(element, 0, QQ(5, 6))
    with pytest.raises(NotInHodgePiece):
        hodge_normalize(GraphElem(hs, {0: x}, f_power=1), 2, 1)


def test_hodge_piece_binomial_basis() -> None:
    hs = _cusp()
    x, y = hs.ring.gens
    basis = HodgePieceBasis(2)
    element = graph_element(hs, [x, y, x * y])
    coefficients = basis.to_binomial(element)
    assert coefficients == {0: x, 1: -y, 2: 2 * x * y}
    assert basis.from_binomial(hs, coefficients) == element
    assert not basis.contains(graph_element(hs, [x, y, x, y]))


# randomized checks of the isomorphism


def _random_poly(rng: random.Random, ring, degree: int = 2):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        monom = tuple(rng.randint(0, degree) for _ in ring.gens)
        terms[monom] = QQ(rng.randint(-4, 4), rng.randint(1, 3))
    return ring.from_dict(terms)


def _random_graph_elem(rng: random.Random, hs: Hypersurface) -> GraphElem:
    coeffs = {level: _random_poly(rng, hs.ring) for level in range(rng.randint(1, 3))}
    return GraphElem(hs, coeffs, f_power=rng.randint(0, 1))


def _random_sfs_elem(rng: random.Random, hs: Hypersurface) -> SFsElem:
    return SFsElem(hs, _random_poly(rng, hs.s_ring), f_power=rng.randint(0, 1))


def _random_graph_operator(rng: random.Random, hs: Hypersurface):
    algebra = hs.graph_algebra
    operator = algebra.zero
    for _ in range(rng.randint(1, 2)):
        term = algebra.scalar(QQ(rng.randint(-3, 3), rng.randint(1, 2)))
        for _ in range(rng.randint(0, 2)):
            term = term * algebra.gen(rng.choice(algebra.names))
        operator = operator + term
    return operator


def test_rho_and_rho_inv_are_mutually_inverse() -> None:
    rng = random.Random(31)
    hs = _cusp()
    for _ in range(100):
        element = _random_graph_elem(rng, hs)
        assert rho(rho_inv(element)) == element, element
    for _ in range(100):
        element = _random_sfs_elem(rng, hs)
        assert rho_inv(rho(element)) == element, element


def test_rho_intertwines_the_actions() -> None:
    rng = random.Random(37)
    hs = _cusp()
    for _ in range(100):
        operator = _random_graph_operator(rng, hs)
        element = _random_sfs_elem(rng, hs)
        assert rho(act(operator, element)) == act(operator, rho(element)), (operator, element)


@pytest.mark.parametrize("level", [1, 2, 3])
def test_rho_inv_of_dt_powers(level) -> None:
    hs = _cusp()
    x, y = hs.ring.gens
    u = x * y - 2
    falling = hs.s_ring.one
    for i in range(level):
        falling *= i - hs.s
    assert rho_inv(GraphElem(hs, {level: u})) == SFsElem(hs, u.set_ring(hs.s_ring) * falling, level)
