"""Families of ideals parametrized by beta, extended flatly over P^1.

A family is an ideal of Q[beta, x]. Its flat extension over the affine
beta-line is the saturation by the leading coefficients (in beta) of a
Gröbner basis that eliminates x; the chart at infinity is obtained by
substituting beta = 1/u, clearing u-powers and saturating by u. The fiber at
u = 0 is the flat limit of the family as beta goes to infinity.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from sympy.polys.rings import PolyElement, PolyRing

from hodge_vfilt.config import Budget
from hodge_vfilt.errors import (
    FlatnessCertificateFailed,
    GluingFailure,
    WindowIncomplete,
)
from hodge_vfilt.graphmod import GraphElem, Hypersurface
from hodge_vfilt.polyalg.groebner import leading_monomial
from hodge_vfilt.polyalg.ideal import (
    Ideal,
    ParamCoefficientIdeal,
    colength,
    equal_ideals,
    generator,
    polynomial_ring,
    saturate,
    specialize,
    variable_index,
)
from hodge_vfilt.polyalg.orders import GREVLEX, elimination_order
from hodge_vfilt.polyalg.rationals import RationalLike, format_rational, to_rational
from hodge_vfilt.utils.logging import make_logger, timed
from hodge_vfilt.vfilt import (
    TruncationParams,
    higher_multiplier_ideal,
    hodge_ideal,
    independent_indices,
    vfiltration,
    window_kernel,
)

logger = make_logger(__name__)

PARAMETER = "beta"
CHART_PARAMETER = "u"
INFINITY = "oo"
SAMPLE_POINTS = (2, 3, 5)


def family_ring(variables: Sequence[str]) -> PolyRing:
    """Q[beta, x_1, ..., x_n]."""
    return polynomial_ring((PARAMETER, *variables))


def _chart_ring(ring: PolyRing, parameter: str) -> PolyRing:
    names = [CHART_PARAMETER if str(s) == parameter else str(s) for s in ring.symbols]
    return polynomial_ring(names)


def _coordinates(ring: PolyRing, parameter: str) -> list[int]:
    skip = variable_index(ring, parameter)
    return [i for i in range(ring.ngens) if i != skip]


def _leading_parameter_coefficient(
    g: PolyElement, parameter: str, coordinates: Sequence[int]
) -> PolyElement:
    """The coefficient in Q[beta] of the x-leading monomial of g."""
    ring = g.ring
    lead = max(
        (tuple(m[i] for i in coordinates) for m in g.itermonoms()),
        key=GREVLEX.key,
    )
    position = variable_index(ring, parameter)
    beta = generator(ring, parameter)
    coefficient = ring.zero
    for monom, coeff in g.iterterms():
        if tuple(monom[i] for i in coordinates) == lead:
            coefficient += coeff * beta ** monom[position]
    return coefficient


def _parameter_content(g: PolyElement, parameter: str) -> PolyElement:
    """gcd in Q[beta] of the coefficients of g as a polynomial in x."""
    ring = g.ring
    position = variable_index(ring, parameter)
    beta = generator(ring, parameter)
    grouped: dict[tuple[int, ...], PolyElement] = {}
    for monom, coeff in g.iterterms():
        rest = monom[:position] + monom[position + 1 :]
        term = coeff * beta ** monom[position]
        grouped[rest] = grouped[rest] + term if rest in grouped else term
    content = ring.zero
    for part in grouped.values():
        content = part if not content else content.gcd(part)
    return content.monic()


def primitive_part(g: PolyElement, parameter: str = PARAMETER) -> PolyElement:
    """g with its content in Q[beta] divided out."""
    content = _parameter_content(g, parameter)
    return g if content == g.ring.one else g.exquo(content)


def bad_locus(ideal: Ideal, parameter: str) -> list[PolyElement]:
    """Irreducible factors in Q[beta] off which the generic basis specializes."""
    coordinates = _coordinates(ideal.ring, parameter)
    basis = ideal.groebner(elimination_order(coordinates))
    factors: set[PolyElement] = set()
    for g in basis:
        coefficient = _leading_parameter_coefficient(g, parameter, coordinates)
        if coefficient.is_ground:
            continue
        _, parts = coefficient.factor_list()
        factors.update(part.monic() for part, _ in parts)
    return sorted(factors, key=str)


def _swap_chart(g: PolyElement, source: str, target: PolyRing) -> PolyElement:
    """Substitute the parameter by its inverse and clear the denominator."""
    position = variable_index(g.ring, source)
    top = max(m[position] for m in g.itermonoms())
    terms = {}
    for monom, coeff in g.iterterms():
        flipped = list(monom)
        flipped[position] = top - monom[position]
        terms[tuple(flipped)] = coeff
    # the parameter sits at the same position in both rings
    return target.from_dict(terms)


def _reduced(ideal: Ideal) -> Ideal:
    return ideal.with_generators(ideal.groebner())


@dataclass(frozen=True)
class GluingRecord:
    """Mutual membership of the charts over beta != 0, oo."""

    beta_generators: int
    u_generators: int


@dataclass(frozen=True)
class P1Family:
    parameter: str
    chart_beta: Ideal
    chart_u: Ideal
    bad_factors: tuple[PolyElement, ...]
    gluing: GluingRecord

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(
            str(s) for s in self.chart_beta.ring.symbols if str(s) != self.parameter
        )


def extend_over_p1(family: ParamCoefficientIdeal, *, budget: Budget | None = None) -> P1Family:
    """The unique flat extension of a beta-family over P^1.

    Raises:
        ValueError: the family is the zero ideal.
        GluingFailure: the two charts disagree away from beta = 0, oo.
    """
    ring, parameter = family.ring, family.parameter
    numerators = [g for g in family.numerators if g]
    if not numerators:
        raise ValueError("cannot extend the zero family")
    ideal = Ideal(ring, (primitive_part(g, parameter) for g in numerators), budget=budget)

    with timed("beta chart", logger=logger):
        factors = bad_locus(ideal, parameter)
        factors += [d.monic() for d in family.denominators if not d.is_ground]
        chart_beta = ideal
        for factor in factors:
            chart_beta = saturate(chart_beta, factor)
        chart_beta = _reduced(chart_beta)
    logger.debug(f"bad beta factors: {[str(f.as_expr()) for f in factors]}")

    u_ring = _chart_ring(ring, parameter)
    u = generator(u_ring, CHART_PARAMETER)
    with timed("u chart", logger=logger):
        swapped = [
            _swap_chart(g, parameter, u_ring) for g in chart_beta.generators
        ]
        chart_u = _reduced(saturate(Ideal(u_ring, swapped, budget=budget), u))

    gluing = _check_gluing(chart_beta, chart_u, parameter)
    result = P1Family(parameter, chart_beta, chart_u, tuple(factors), gluing)
    logger.info(f"extended family over P^1 with {len(chart_u.generators)} generators at oo")
    return result


def _check_gluing(chart_beta: Ideal, chart_u: Ideal, parameter: str) -> GluingRecord:
    beta = generator(chart_beta.ring, parameter)
    u = generator(chart_u.ring, CHART_PARAMETER)
    local_beta = saturate(chart_beta, beta)
    local_u = saturate(chart_u, u)
    for g in chart_u.generators:
        back = _swap_chart(g, CHART_PARAMETER, chart_beta.ring)
        if not local_beta.contains(back):
            raise GluingFailure(f"{back.as_expr()} is missing from the beta chart")
    for g in chart_beta.generators:
        there = _swap_chart(g, parameter, chart_u.ring)
        if not local_u.contains(there):
            raise GluingFailure(f"{there.as_expr()} is missing from the u chart")
    return GluingRecord(len(chart_beta.generators), len(chart_u.generators))


# fibers


def parse_point(point: RationalLike) -> Any:
    """A rational value, or INFINITY for the point at infinity."""
    if isinstance(point, str) and point.strip().lower() in (INFINITY, "inf", "infinity"):
        return INFINITY
    if isinstance(point, float) and math.isinf(point):
        return INFINITY
    return to_rational(point)


def format_point(point: Any) -> str:
    return INFINITY if point == INFINITY else format_rational(point)


@dataclass(frozen=True)
class FlatnessCertificate:
    """Comparison of a fiber with generic fibers of the family."""

    method: str
    reference_points: tuple[Any, ...]
    expected: Any
    observed: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.observed


@dataclass(frozen=True)
class Fiber:
    point: Any
    ideal: Ideal
    certificate: FlatnessCertificate


def _specialize_chart(chart: Ideal, parameter: str, value: Any) -> Ideal:
    coefficients = ParamCoefficientIdeal.polynomial(chart.ring, parameter, chart.generators)
    fiber = specialize(coefficients, value)
    return _reduced(Ideal(fiber.ring, fiber.generators, budget=chart.budget))


def sample_points(family: P1Family, count: int = len(SAMPLE_POINTS)) -> list[Any]:
    """Rational points away from the bad locus, starting from 2, 3, 5."""
    beta = generator(family.chart_beta.ring, family.parameter)
    chosen: list[Any] = []
    for start in SAMPLE_POINTS:
        point = to_rational(start)
        while point in chosen or any(
            not factor.evaluate(beta, point) for factor in family.bad_factors
        ):
            point += 1
        chosen.append(point)
        if len(chosen) == count:
            break
    return chosen


def _leading_ideal(ideal: Ideal) -> Ideal:
    ring = ideal.ring
    return ideal.with_generators(
        ring.from_dict({leading_monomial(g): 1}) for g in ideal.groebner()
    )


def fiber(family: P1Family, point: RationalLike) -> Fiber:
    """The fiber over a rational beta or over infinity, with a flatness certificate.

    Raises:
        FlatnessCertificateFailed: the fiber does not match the generic fiber.
    """
    where = parse_point(point)
    if where == INFINITY:
        ideal = _specialize_chart(family.chart_u, CHART_PARAMETER, 0)
    else:
        ideal = _specialize_chart(family.chart_beta, family.parameter, where)

    references = sample_points(family)
    generic = [_specialize_chart(family.chart_beta, family.parameter, p) for p in references]
    lengths = {colength(g) for g in generic}
    if len(lengths) != 1:
        raise FlatnessCertificateFailed(
            f"generic fibers have different colengths {sorted(lengths)}"
        )
    (expected,) = lengths
    if expected != math.inf:
        certificate = FlatnessCertificate("colength", tuple(references), expected, colength(ideal))
    else:
        lead = _leading_ideal(ideal)
        same = equal_ideals(lead, _leading_ideal(generic[0]))
        certificate = FlatnessCertificate("leading-terms", tuple(references), True, same)
    if not certificate.passed:
        raise FlatnessCertificateFailed(
            f"fiber at {format_point(where)}: {certificate.method} "
            f"{certificate.observed} != {certificate.expected}"
        )
    return Fiber(where, ideal, certificate)


def flat_limit(
    family: ParamCoefficientIdeal,
    points: Iterable[RationalLike] = (),
    *,
    budget: Budget | None = None,
) -> tuple[P1Family, list[Fiber]]:
    """Extend over P^1 and take the fibers at ``points`` and at infinity."""
    extended = extend_over_p1(family, budget=budget)
    fibers = [fiber(extended, p) for p in points]
    fibers.append(fiber(extended, INFINITY))
    return extended, fibers


# families from Hodge ideals


@dataclass(frozen=True)
class HodgeFamily:
    """The beta-family of Hodge ideals on (start, alpha]."""

    family: ParamCoefficientIdeal
    start: Any
    alpha: Any
    window: TruncationParams
    sample_checks: tuple[tuple[Any, bool], ...]

    @property
    def consistent(self) -> bool:
        return all(ok for _, ok in self.sample_checks)


def _parametric_normalization(
    element: GraphElem, k: int, ring: PolyRing
) -> PolyElement:
    """sum_l g_l f^(k-l) (beta)(beta+1)...(beta+l-1) in Q[beta, x]."""
    beta = generator(ring, PARAMETER)
    f = element.hypersurface.f.set_ring(ring)
    result = ring.zero
    for level, g in element.coeffs.items():
        weight = ring.one
        for i in range(level):
            weight *= beta + i
        result += g.set_ring(ring) * f ** (k - level) * weight
    return result


def build_family_from_hodge(
    f: PolyElement | Hypersurface,
    k: int,
    alpha: RationalLike,
    window: TruncationParams | None = None,
    *,
    budget: Budget | None = None,
) -> HodgeFamily:
    """The Hodge ideals I_k(beta D) for beta between the previous wall and alpha.

    F_{k+1}V^beta does not change on that interval, so the same window
    elements give every I_k(beta D) with beta kept symbolic.

    Raises:
        WindowIncomplete: the window holds no element of F_{k+1}V^alpha.
    """
    point = to_rational(alpha)
    if point <= 0:
        raise ValueError(f"alpha must be positive, got {format_rational(point)}")
    hs = f if isinstance(f, Hypersurface) else Hypersurface(f)
    if window is None:
        window = TruncationParams.for_hypersurface(hs, k)
    wall = vfiltration(hs, budget).nearest_wall_below(point)
    start = wall if wall is not None else to_rational(0)

    kernel = window_kernel(hs, point, window, budget=budget)
    ring = family_ring(hs.variables)
    images = [_parametric_normalization(w, k, ring) for w in kernel]
    chosen = [images[i] for i in independent_indices(images) if images[i]]
    if not chosen:
        raise WindowIncomplete(
            f"no element of F_{k + 1}V^{format_rational(point)} in the window"
        )

    coordinates = _coordinates(ring, PARAMETER)
    generic = Ideal(ring, chosen, budget=budget).groebner(elimination_order(coordinates))
    generators = [primitive_part(g) for g in generic]
    family = ParamCoefficientIdeal.polynomial(ring, PARAMETER, generators)

    checks = []
    for sample in (point, (start + point) / 2):
        specialized = specialize(family, sample)
        expected = hodge_ideal(hs, k, sample, window, budget=budget).ideal
        fiber_ideal = Ideal(hs.ring, (g.set_ring(hs.ring) for g in specialized.generators))
        checks.append((sample, equal_ideals(fiber_ideal, expected)))
    logger.info(
        f"Hodge family k={k} on ({format_rational(start)}, {format_rational(point)}]: "
        f"{len(generators)} generators"
    )
    return HodgeFamily(family, start, point, window, tuple(checks))


@dataclass(frozen=True)
class LimitCheck:
    """Flat limit at infinity of the Hodge family against the higher multiplier ideal."""

    k: int
    alpha: Any
    family: HodgeFamily
    extended: P1Family
    limit: Fiber
    higher_multiplier: Ideal
    complete: bool

    @property
    def passed(self) -> bool:
        return self.family.consistent and equal_ideals(
            self.limit.ideal, self.higher_multiplier
        )


def flat_limit_check(
    f: PolyElement | Hypersurface,
    k: int,
    alpha: RationalLike,
    window: TruncationParams | None = None,
    *,
    budget: Budget | None = None,
) -> LimitCheck:
    """The limit at beta = oo of I_k(beta D) must be the higher multiplier ideal."""
    hs = f if isinstance(f, Hypersurface) else Hypersurface(f)
    built = build_family_from_hodge(hs, k, alpha, window, budget=budget)
    extended = extend_over_p1(built.family, budget=budget)
    limit = fiber(extended, INFINITY)
    higher = higher_multiplier_ideal(hs, k, alpha, built.window, budget=budget)
    limit_ideal = Ideal(hs.ring, (g.set_ring(hs.ring) for g in limit.ideal.generators))
    result = LimitCheck(
        k,
        built.alpha,
        built,
        extended,
        Fiber(limit.point, limit_ideal, limit.certificate),
        higher.ideal,
        higher.complete,
    )
    logger.info(f"flat limit vs higher multiplier ideal: {'pass' if result.passed else 'FAIL'}")
    return result
