"""Tests for V-filtration membership and the windowed ideal computations."""

from __future__ import annotations

import random

import pytest
from sympy.polys.domains import QQ

from hodge_vfilt.bfun import BFunction, ElementHandle, parametric_element_bfunction
from hodge_vfilt.graphmod import Hypersurface
from hodge_vfilt.polyalg import Ideal, UnivariatePoly, equal_ideals, polynomial_ring
from hodge_vfilt.render import format_generators
from hodge_vfilt.vfilt import (
    ClaimVerdict,
    Membership,
    TruncationParams,
    VFiltration,
    classify,
    divisor_comparison,
    higher_multiplier_ideal,
    hodge_ideal,
    jumping_walls,
    left_continuity_test,
    multiplier_ideal,
    ordinary_singularity_claims,
    strictness_check,
    t_shift,
    v_member,
    verify_claimed_ideal,
    window_kernel,
    window_monomials,
)


def _smooth() -> Hypersurface:
    ring = polynomial_ring(("x",))
    return Hypersurface(ring.gens[0])


def _cusp() -> Hypersurface:
    ring = polynomial_ring(("x", "y"))
    x, y = ring.gens
    return Hypersurface(x**2 + y**3)


def _ideal(hs: Hypersurface, *generators) -> Ideal:
    return Ideal(hs.ring, generators)


# membership


def test_classify_against_roots() -> None:
    b = BFunction.from_poly(UnivariatePoly.from_roots([-1]))
    assert classify(b, 1) is Membership.MEMBER
    assert classify(b, QQ(1, 2)) is Membership.STRICT
    assert classify(b, 2) is Membership.OUTSIDE


def test_walls_of_a_smooth_divisor() -> None:
    vf = VFiltration(_smooth())
    assert vf.exponents == [(1, 1)]
    assert vf.alpha_f == vf.alpha_max == 1
    assert vf.candidate_walls(0, 3) == [1, 2, 3]
    assert vf.candidate_walls(1, 2) == [2]
    assert vf.nearest_wall_below(QQ(5, 2)) == 2
    assert vf.nearest_wall_below(QQ(3, 2)) == 1
    assert vf.nearest_wall_below(1) is None


def test_projection_shift_for_smooth_divisor() -> None:
    vf = VFiltration(_smooth())
    assert vf.projection(1).shift == 0
    assert vf.projection(2).shift == 1
    assert vf.projection(1, strict=True).shift == 1
    assert vf.projection(2).multiplier.degree == 0


@pytest.mark.parametrize(
    "alpha,verdict",
    [(1, Membership.MEMBER), (QQ(1, 2), Membership.STRICT), (2, Membership.OUTSIDE)],
)
def test_delta_membership(alpha, verdict) -> None:
    hs = _smooth()
    certificate = v_member(hs, ElementHandle.delta(hs), alpha)
    assert certificate.method == "bfunction"
    assert certificate.verdict is verdict


def test_projection_agrees_with_bfunction() -> None:
    hs = _smooth()
    delta = ElementHandle.delta(hs)
    for alpha in (QQ(1, 2), 1, QQ(3, 2), 2):
        by_b = v_member(hs, delta, alpha, method="bfunction")
        by_projection = v_member(hs, delta, alpha, method="projection")
        assert by_projection.verdict is by_b.verdict, alpha


def test_x_delta_sits_one_step_deeper() -> None:
    hs = _smooth()
    (x,) = hs.ring.gens
    certificate = v_member(hs, ElementHandle(hs, (x,)), 2, method="projection")
    assert certificate.member
    assert certificate.strict is False
    assert len(certificate.tests) == 2


def test_dt_delta_lies_in_v1_for_smooth_divisor() -> None:
    hs = _smooth()
    handle = ElementHandle(hs, (hs.ring.zero, hs.ring.one))
    assert v_member(hs, handle, 1).member
    assert v_member(hs, handle, 1, method="projection").member


def test_t_shift_moves_one_step() -> None:
    hs = _smooth()
    (x,) = hs.ring.gens
    shifted = t_shift(ElementHandle.delta(hs))
    assert shifted == ElementHandle(hs, (x,))
    assert v_member(hs, shifted, 2).member


def test_membership_input_errors() -> None:
    hs = _smooth()
    with pytest.raises(ValueError, match="zero element"):
        v_member(hs, ElementHandle(hs, ()), 1)
    with pytest.raises(ValueError, match="unknown membership method"):
        v_member(hs, ElementHandle.delta(hs), 1, method="guess")


# windows


def test_truncation_params() -> None:
    hs = _cusp()
    window = TruncationParams.for_hypersurface(hs, 2)
    assert (window.deg_bound, window.tail_deg, window.k) == (8, 11, 2)
    assert window.lowered(hs) == TruncationParams(5, 8, 1)
    assert TruncationParams(2, 2, 0).lowered(hs) is None
    with pytest.raises(ValueError, match="tail_deg"):
        TruncationParams(4, 3, 1)
    with pytest.raises(ValueError, match="level k"):
        TruncationParams(1, 1, -1)


def test_window_cells_put_tails_first() -> None:
    assert window_monomials(2, 1) == [(0, 0), (1, 0), (0, 1)]
    cells = TruncationParams(1, 2, 1).cells(1)
    assert cells == [(0, (0,)), (0, (1,)), (0, (2,)), (1, (0,)), (1, (1,))]


def test_window_kernel_of_smooth_divisor() -> None:
    hs = _smooth()
    kernel = window_kernel(hs, 1, TruncationParams(1, 1, 0))
    assert len(kernel) == 2


# ideals of a smooth divisor


def test_higher_multiplier_ideal_smooth() -> None:
    hs = _smooth()
    (x,) = hs.ring.gens
    at_one = higher_multiplier_ideal(hs, 0, 1, TruncationParams(2, 2, 0))
    assert at_one.ideal.is_unit
    assert at_one.complete
    at_two = higher_multiplier_ideal(hs, 0, 2, TruncationParams(2, 2, 0))
    assert equal_ideals(at_two.ideal, _ideal(hs, x))
    assert at_two.complete
    assert [format_generators([w.generator]) for w in at_two.witnesses] == [["x"]]


def test_window_ideal_agrees_with_parametric_membership() -> None:
    hs = _smooth()
    (x,) = hs.ring.gens
    higher = higher_multiplier_ideal(hs, 0, 2, TruncationParams(2, 2, 0))
    assert equal_ideals(higher.ideal, _ideal(hs, x))

    ring = polynomial_ring(("c", "x"))
    c, px = ring.gens
    strata = parametric_element_bfunction(hs, ElementHandle(hs, (c + px,), ("c",)))
    assert strata
    for stratum in strata:
        inside = classify(stratum.bfunction, 2) is not Membership.OUTSIDE
        # only c = 0 leaves an element of the window ideal
        assert inside == (stratum.equations == ("c = 0",))
    assert higher.ideal.contains(x)
    assert not higher.ideal.contains(x + 1)


def test_higher_multiplier_ideal_needs_positive_alpha() -> None:
    with pytest.raises(ValueError, match="positive"):
        higher_multiplier_ideal(_smooth(), 0, 0)


def test_window_level_must_match() -> None:
    with pytest.raises(ValueError, match="level"):
        hodge_ideal(_smooth(), 1, 1, TruncationParams(1, 1, 0))


def test_hodge_ideals_of_smooth_divisor_are_trivial() -> None:
    hs = _smooth()
    assert hodge_ideal(hs, 0, 1, TruncationParams(1, 1, 0)).ideal.is_unit
    assert hodge_ideal(hs, 1, QQ(1, 2), TruncationParams(1, 2, 1)).ideal.is_unit


def test_multiplier_ideal_smooth() -> None:
    hs = _smooth()
    (x,) = hs.ring.gens
    assert multiplier_ideal(hs, 1, 2).ideal.is_unit
    assert equal_ideals(multiplier_ideal(hs, QQ(3, 2), 2).ideal, _ideal(hs, x))


def test_jumping_walls_smooth() -> None:
    hs = _smooth()
    segments = jumping_walls(hs, 0, 0, 3, TruncationParams(3, 3, 0))
    assert [(s.start, s.wall) for s in segments] == [(0, 1), (1, 2), (2, 3)]
    assert [format_generators(s.ideal.generators) for s in segments] == [
        ["1"],
        ["x"],
        ["x^2"],
    ]
    with pytest.raises(ValueError, match="bad range"):
        jumping_walls(hs, 0, 2, 1)


def test_left_continuity_smooth() -> None:
    hs = _smooth()
    report = left_continuity_test(hs, 0, 2, TruncationParams(2, 2, 0))
    assert report.delta == QQ(1, 2)
    assert report.left_continuous
    assert report.hodge_equals_higher
    assert report.consistent


@pytest.mark.parametrize("k,alpha", [(1, 1), (2, QQ(1, 2))])
def test_strictness_smooth(k, alpha) -> None:
    hs = _smooth()
    window = TruncationParams.for_hypersurface(hs, k, 2)
    report = strictness_check(hs, k, alpha, window)
    assert report.injective
    assert report.passed


def test_divisor_comparison_smooth() -> None:
    hs = _smooth()
    result = divisor_comparison(hs, 1, QQ(1, 2), TruncationParams(1, 2, 1))
    assert result.agree_modulo_f


# claims


def test_verify_claimed_ideal_verdicts() -> None:
    hs = _smooth()
    (x,) = hs.ring.gens
    window = TruncationParams(2, 2, 0)

    verified = verify_claimed_ideal(hs, 0, 2, _ideal(hs, x, x**2), window)
    assert verified.verdict is ClaimVerdict.VERIFIED
    assert verified.redundant_given == ("x^2",)
    assert verified.passed

    too_big = verify_claimed_ideal(hs, 0, 2, _ideal(hs, hs.ring.one), window)
    assert too_big.verdict is ClaimVerdict.REFUTED
    assert too_big.sound == (("1", False),)

    too_small = verify_claimed_ideal(hs, 0, 2, _ideal(hs, x**2), window)
    assert too_small.verdict is ClaimVerdict.REFUTED
    assert too_small.unexpected == ("x",)


def test_ordinary_singularity_claims_for_quadric_cone() -> None:
    claims = ordinary_singularity_claims(2, 3)
    assert [(c.k, c.alpha, c.power) for c in claims] == [(1, QQ(1, 2), 0), (1, 1, 1)]
    assert claims[0].ideal.is_unit
    assert format_generators(claims[1].ideal.generators) == ["x", "y", "z"]
    with pytest.raises(ValueError, match="multiplicity"):
        ordinary_singularity_claims(1, 2)


# the cusp x^2 + y^3


@pytest.mark.slow
def test_cusp_projection_multiplier() -> None:
    vf = VFiltration(_cusp())
    assert vf.alpha_f == QQ(5, 6)
    assert vf.alpha_max == QQ(7, 6)
    test = vf.projection(QQ(5, 6))
    assert test.shift == 0
    assert test.multiplier == UnivariatePoly.from_roots([-1, QQ(-5, 6)])
    assert vf.nearest_wall_below(QQ(5, 6)) == QQ(1, 6)


@pytest.mark.slow
def test_cusp_level_two_ideals_inside_the_interval() -> None:
    hs = _cusp()
    window = TruncationParams.for_hypersurface(hs, 2, 6)
    alpha = QQ(11, 12)
    x, y = hs.ring.gens
    higher = higher_multiplier_ideal(hs, 2, alpha, window)
    assert equal_ideals(higher.ideal, Ideal(hs.ring, [x**3, x**2 * y, x * y**3, y**5]))
    assert higher.complete

    hodge = hodge_ideal(hs, 2, alpha, window)
    expected = [x**3, x**2 * y**2, x * y**3, y**4 - QQ(17, 6) * x**2 * y]
    assert equal_ideals(hodge.ideal, Ideal(hs.ring, expected))
    assert divisor_comparison(hs, 2, alpha, window).agree_modulo_f


@pytest.mark.slow
def test_cusp_level_two_ideals_at_the_minimal_exponent() -> None:
    hs = _cusp()
    x, y = hs.ring.gens
    window = TruncationParams.for_hypersurface(hs, 2, 6)
    alpha = QQ(5, 6)
    # delta lies in V^(5/6), so dx^2, dx*dy and dy^2 put the Jacobian ideal squared here
    higher = higher_multiplier_ideal(hs, 2, alpha, window)
    jacobian_squared = Ideal(hs.ring, [x**2, x * y**2, y**4])
    assert equal_ideals(higher.ideal, jacobian_squared)

    hodge = hodge_ideal(hs, 2, alpha, window)
    expected = [x**3, x**2 * y, x * y**2, y**3 - QQ(8, 3) * x**2]
    assert equal_ideals(hodge.ideal, Ideal(hs.ring, expected))
    assert divisor_comparison(hs, 2, alpha, window).agree_modulo_f


@pytest.mark.slow
def test_cusp_hodge_ideal_is_not_left_continuous() -> None:
    hs = _cusp()
    window = TruncationParams.for_hypersurface(hs, 2, 6)
    report = left_continuity_test(hs, 2, QQ(9, 10), window)
    assert report.delta == QQ(1, 30)
    assert not report.left_continuous
    assert not report.hodge_equals_higher
    assert report.consistent


# randomized membership invariants

ALPHAS = (QQ(1, 2), 1, QQ(3, 2), 2, QQ(5, 2), 3)


def _random_handle(rng: random.Random, hs: Hypersurface) -> ElementHandle:
    (x,) = hs.ring.gens
    while True:
        coefficients = tuple(
            sum(
                (QQ(rng.randint(-3, 3)) * x ** rng.randint(0, 2) for _ in range(rng.randint(1, 2))),
                hs.ring.zero,
            )
            for _ in range(rng.randint(1, 2))
        )
        handle = ElementHandle(hs, coefficients)
        if not handle.is_zero:
            return handle


@pytest.mark.slow
def test_membership_is_monotone_in_alpha() -> None:
    rng = random.Random(5)
    hs = _smooth()
    for _ in range(10):
        handle = _random_handle(rng, hs)
        certificates = [v_member(hs, handle, alpha) for alpha in ALPHAS]
        members = [c.member for c in certificates]
        assert members == sorted(members, reverse=True), str(handle)
        assert all(c.member for c in certificates if c.strict)


@pytest.mark.slow
def test_membership_survives_t_and_functions() -> None:
    rng = random.Random(6)
    hs = _smooth()
    (x,) = hs.ring.gens
    for _ in range(10):
        handle = _random_handle(rng, hs)
        multiplied = ElementHandle(hs, tuple((x + 2) * g for g in handle.coefficients))
        for alpha in ALPHAS[:3]:
            if not v_member(hs, handle, alpha).member:
                continue
            assert v_member(hs, t_shift(handle), alpha + 1).member, str(handle)
            assert v_member(hs, multiplied, alpha).member, str(handle)
