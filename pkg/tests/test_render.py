"""Tests for canonical polynomial and ideal text."""

from __future__ import annotations

import random

from sympy.polys.domains import QQ

from hodge_vfilt.parsing import parse_poly
from hodge_vfilt.polyalg import polynomial_ring
from hodge_vfilt.render import format_generators, format_ideal, format_poly


def _ring():
    return polynomial_ring(("x", "y"))


def test_format_poly_descending_grevlex() -> None:
    ring = _ring()
    x, y = ring.gens
    assert format_poly(y**4 - QQ(8, 3) * x**2 * y) == "y^4 - 8/3*x^2*y"
    assert format_poly(-x + QQ(1, 2)) == "-x + 1/2"
    assert format_poly(ring.zero) == "0"
    assert format_poly(ring.one) == "1"


def test_format_poly_parses_back() -> None:
    ring = _ring()
    x, y = ring.gens
    p = QQ(-5, 6) * x**3 * y + 7 * y**2 - 1
    assert parse_poly(format_poly(p), ring) == p


def test_generators_sorted_by_degree_then_grevlex() -> None:
    ring = _ring()
    x, y = ring.gens
    gens = [x**2 * y, x**3, ring.zero, y**5, x * y**3]
    assert format_generators(gens) == ["y^5", "x*y^3", "x^3", "x^2*y"]


def test_format_ideal() -> None:
    ring = _ring()
    x, y = ring.gens
    assert format_ideal([y, x]) == "(x, y)"
    assert format_ideal([]) == "(0)"


def _random_poly(rng: random.Random, ring):
    terms = {}
    for _ in range(rng.randint(0, 5)):
        monom = tuple(rng.randint(0, 4) for _ in ring.gens)
        terms[monom] = QQ(rng.randint(-20, 20), rng.randint(1, 9))
    return ring.from_dict({m: c for m, c in terms.items() if c})


def test_random_polynomials_parse_back() -> None:
    rng = random.Random(20240611)
    ring = polynomial_ring(("x", "y", "z"))
    for _ in range(500):
        p = _random_poly(rng, ring)
        text = format_poly(p)
        assert parse_poly(text, ring) == p, text
