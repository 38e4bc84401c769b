"""The V-filtration along t of the graph pushforward of O_X(*D).

Membership of m = sum_l g_l dt^l delta in V^alpha is decided either from the
element b-function (all roots <= -alpha) or by a projection test that is
linear in m. Let U^N = V^N D_{n+1} delta, alpha_f and alpha_max the least and
largest -root of b_f. Then U^N lies in V^(alpha_f + N) and V^(alpha_max + N)
lies in U^N. Choosing N with U^N inside V^alpha, and B(s) the product of
(s + beta)^(e_beta) over the possible jumps beta in [alpha, alpha_max + N),

    m in V^alpha  <=>  B(s) m in U^N  <=>  B(-dt*t) M in I_f + V^N D_{n+1},

the last condition being a V-truncated normal form. Because that normal
form is linear, window computations reduce to exact linear algebra over Q.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from hodge_vfilt.bfun import (
    BFunction,
    ElementHandle,
    engine_for,
    operator_of,
)
from hodge_vfilt.config import DEFAULT_DEG_BOUND, Budget
from hodge_vfilt.errors import BudgetExceeded
from hodge_vfilt.graphmod import GraphElem, Hypersurface, ev, hodge_normalize, rho_inv
from hodge_vfilt.polyalg.ideal import Ideal, equal_ideals, ideal_sum, polynomial_ring
from hodge_vfilt.polyalg.rationals import (
    RationalLike,
    ceil_rational,
    floor_rational,
    format_rational,
    to_rational,
)
from hodge_vfilt.polyalg.univariate import UnivariatePoly
from hodge_vfilt.render import format_generators, format_poly
from hodge_vfilt.utils.linalg import echelon, nullspace, span_coefficients
from hodge_vfilt.utils.logging import make_logger, timed
from hodge_vfilt.weyl import WeylElem, v_adapted_normal_form

logger = make_logger(__name__)

Exps = tuple[int, ...]
Cell = tuple[int, Exps]

# elements with at most this many terms and dt level <= 1 go through b-functions
SMALL_ELEMENT_TERMS = 4


class Membership(Enum):
    """Where an element sits relative to V^alpha."""

    STRICT = "in V^>alpha"
    MEMBER = "in V^alpha"
    OUTSIDE = "not in V^alpha"


def classify(bfunction: BFunction, alpha: RationalLike) -> Membership:
    """All roots <= -alpha means V^alpha; all roots < -alpha means V^>alpha."""
    point = to_rational(alpha)
    if all(root < -point for root in bfunction.roots):
        return Membership.STRICT
    if all(root <= -point for root in bfunction.roots):
        return Membership.MEMBER
    return Membership.OUTSIDE


@dataclass(frozen=True)
class ProjectionTest:
    """B(s) and the shift N deciding membership in V^alpha (or V^>alpha)."""

    shift: int
    multiplier: UnivariatePoly

    @property
    def floor(self) -> int:
        return -self.shift


@dataclass(frozen=True)
class MembershipCertificate:
    """``strict`` is None when only V^alpha itself was decided."""

    element: ElementHandle
    alpha: Any
    member: bool
    strict: bool | None
    method: str
    bfunction: BFunction | None = None
    tests: tuple[ProjectionTest, ...] = ()

    @property
    def verdict(self) -> Membership:
        if self.strict:
            return Membership.STRICT
        return Membership.MEMBER if self.member else Membership.OUTSIDE


@dataclass(frozen=True)
class TruncationParams:
    """The finite window: leading coefficient degree, tail degree, level."""

    deg_bound: int
    tail_deg: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"level k must be >= 0, got {self.k}")
        if self.deg_bound < 0:
            raise ValueError(f"deg_bound must be >= 0, got {self.deg_bound}")
        if self.tail_deg < self.deg_bound:
            raise ValueError(
                f"tail_deg ({self.tail_deg}) must be >= deg_bound ({self.deg_bound})"
            )

    @classmethod
    def for_hypersurface(
        cls,
        hypersurface: Hypersurface,
        k: int,
        deg_bound: int | None = None,
        tail_deg: int | None = None,
    ) -> TruncationParams:
        d = DEFAULT_DEG_BOUND if deg_bound is None else deg_bound
        tail = d + hypersurface.degree if tail_deg is None else tail_deg
        return cls(d, tail, k)

    def lowered(self, hypersurface: Hypersurface) -> TruncationParams | None:
        """The window at level k - 1 mapped into this one by s + alpha."""
        if self.k == 0:
            return None
        e = hypersurface.degree
        d = max(self.deg_bound - e, 0)
        return TruncationParams(d, max(self.tail_deg - e, d), self.k - 1)

    def cells(self, nvars: int) -> list[Cell]:
        """Tail cells (levels < k) first, then the leading level."""
        tails = [
            (level, exps)
            for level in range(self.k)
            for exps in window_monomials(nvars, self.tail_deg)
        ]
        return tails + [(self.k, exps) for exps in window_monomials(nvars, self.deg_bound)]


def window_monomials(nvars: int, degree: int) -> list[Exps]:
    """Exponent vectors of total degree <= ``degree``, by degree then lex."""
    monomials = [
        e for e in itertools.product(range(degree + 1), repeat=nvars) if sum(e) <= degree
    ]
    return sorted(monomials, key=lambda e: (sum(e), tuple(-x for x in e)))


@dataclass(frozen=True)
class Witness:
    """An element of F_{k+1}V^alpha and the ideal generator it produces."""

    generator: PolyElement
    element: GraphElem
    certificate: MembershipCertificate


@dataclass(frozen=True)
class CertifiedIdeal:
    """An ideal computed inside a window, with a witness per spanning generator.

    ``complete`` records that the window was searched exhaustively: for
    higher multiplier ideals it also means every leading coefficient found
    in the window is a combination of the accepted monomials.
    """

    kind: str
    alpha: Any
    ideal: Ideal
    window: TruncationParams
    witnesses: tuple[Witness, ...]
    complete: bool = True

    @cached_property
    def generators(self) -> list[PolyElement]:
        return self.ideal.minimal_generators()

    def __str__(self) -> str:
        return "(" + ", ".join(format_generators(self.generators)) + ")"


class VFiltration:
    """V-filtration membership for one f, with cached projection columns."""

    def __init__(self, hypersurface: Hypersurface, budget: Budget | None = None) -> None:
        self.hypersurface = hypersurface
        self.engine = engine_for(hypersurface, budget)
        self._columns: dict[tuple[ProjectionTest, int, Exps], dict[Any, Any]] = {}
        self._operators: dict[ProjectionTest, WeylElem] = {}

    @cached_property
    def exponents(self) -> list[tuple[Any, int]]:
        """-roots of b_f with multiplicities, smallest first."""
        b = self.engine.bfunction
        return sorted(((-root, mult) for root, mult in b.distinct_roots))

    @property
    def alpha_f(self) -> Any:
        return self.exponents[0][0]

    @property
    def alpha_max(self) -> Any:
        return self.exponents[-1][0]

    def candidate_walls(self, lo: RationalLike, hi: RationalLike) -> list[Any]:
        """The points alpha_i + j (j integer) in (lo, hi]."""
        low, high = to_rational(lo), to_rational(hi)
        walls = set()
        for exponent, _ in self.exponents:
            j = floor_rational(low - exponent) + 1
            while exponent + j <= high:
                walls.add(exponent + j)
                j += 1
        return sorted(walls)

    def nearest_wall_below(self, alpha: RationalLike) -> Any | None:
        point = to_rational(alpha)
        below = [
            exponent + ceil_rational(point - exponent) - 1 for exponent, _ in self.exponents
        ]
        positive = [w for w in below if w > 0]
        return max(positive) if positive else None

    @lru_cache(maxsize=64)  # noqa: B019
    def projection(self, alpha: RationalLike, strict: bool = False) -> ProjectionTest:
        point = to_rational(alpha)
        if strict:
            shift = max(0, floor_rational(point - self.alpha_f) + 1)
        else:
            shift = max(0, ceil_rational(point - self.alpha_f))
        top = self.alpha_max + shift
        multiplicity: dict[Any, int] = {}
        for exponent, _ in self.exponents:
            j = ceil_rational(point - exponent)
            while exponent + j < top:
                beta = exponent + j
                if beta > point or (beta == point and not strict):
                    multiplicity[beta] = sum(
                        mult
                        for other, mult in self.exponents
                        if (other - beta).denominator == 1
                    )
                j += 1
        roots = [-beta for beta, e in sorted(multiplicity.items()) for _ in range(e)]
        test = ProjectionTest(shift, UnivariatePoly.from_roots(roots))
        logger.debug(
            f"projection test for V^{'>' if strict else ''}{format_rational(point)}: "
            f"N = {shift}, B = {test.multiplier}"
        )
        return test

    def _operator(self, test: ProjectionTest) -> WeylElem:
        if test not in self._operators:
            self._operators[test] = operator_of(test.multiplier, self.engine.algebra)
        return self._operators[test]

    def column(self, test: ProjectionTest, level: int, exps: Exps) -> dict[Any, Any]:
        """The V-truncated normal form of B(-dt*t) x^exps dt^level."""
        key = (test, level, exps)
        if key not in self._columns:
            algebra = self.engine.algebra
            powers = dict(zip(self.hypersurface.variables, exps, strict=True))
            monomial = algebra.monomial(algebra.exps(**powers, dt=level))
            remainder = v_adapted_normal_form(
                self._operator(test) * monomial,
                self.engine.v_basis,
                self.engine.weight,
                test.floor,
            )
            self._columns[key] = dict(remainder.terms)
        return self._columns[key]

    def element_column(self, test: ProjectionTest, handle: ElementHandle) -> dict[Any, Any]:
        total: dict[Any, Any] = {}
        for level, g in enumerate(handle.coefficients):
            for monom, coeff in g.iterterms():
                for key, value in self.column(test, level, monom).items():
                    total[key] = total.get(key, QQ.zero) + coeff * value
        return {key: value for key, value in total.items() if value}

    def contains(self, handle: ElementHandle, alpha: RationalLike, strict: bool = False) -> bool:
        return not self.element_column(self.projection(alpha, strict), handle)

    def member(
        self,
        handle: ElementHandle,
        alpha: RationalLike,
        *,
        method: str = "auto",
        decide_strict: bool = True,
    ) -> MembershipCertificate:
        if handle.is_zero:
            raise ValueError("every V^alpha contains the zero element")
        point = to_rational(alpha)
        if method == "auto":
            terms = sum(len(g) for g in handle.coefficients)
            small = terms <= SMALL_ELEMENT_TERMS and handle.level <= 1
            method = "bfunction" if small else "projection"
        if method == "bfunction":
            b = self.engine.element_bfunction(handle)
            verdict = classify(b, point)
            return MembershipCertificate(
                handle,
                point,
                verdict is not Membership.OUTSIDE,
                verdict is Membership.STRICT,
                method,
                bfunction=b,
            )
        if method != "projection":
            raise ValueError(f"unknown membership method {method!r}")
        test = self.projection(point)
        member = not self.element_column(test, handle)
        strict: bool | None = None
        tests = [test]
        if not member:
            strict = False
        elif decide_strict:
            strict_test = self.projection(point, strict=True)
            tests.append(strict_test)
            strict = not self.element_column(strict_test, handle)
        return MembershipCertificate(handle, point, member, strict, method, tests=tuple(tests))


@lru_cache(maxsize=32)
def vfiltration(hypersurface: Hypersurface, budget: Budget | None = None) -> VFiltration:
    return VFiltration(hypersurface, budget)


def _hypersurface(f: PolyElement | Hypersurface) -> Hypersurface:
    return f if isinstance(f, Hypersurface) else Hypersurface(f)


def _positive(alpha: RationalLike) -> Any:
    point = to_rational(alpha)
    if point <= 0:
        raise ValueError(f"alpha must be positive, got {format_rational(point)}")
    return point


def _window(
    hs: Hypersurface, k: int, window: TruncationParams | None
) -> TruncationParams:
    if window is None:
        return TruncationParams.for_hypersurface(hs, k)
    if window.k != k:
        raise ValueError(f"window is for level {window.k}, not {k}")
    return window


def _cell_element(hs: Hypersurface, weights: Iterable[tuple[Cell, Any]]) -> GraphElem:
    coeffs: dict[int, PolyElement] = {}
    for (level, exps), value in weights:
        if not value:
            continue
        term = hs.ring.from_dict({exps: value})
        coeffs[level] = coeffs[level] + term if level in coeffs else term
    return GraphElem(hs, coeffs)


def _monomial(hs: Hypersurface, exps: Exps) -> PolyElement:
    return hs.ring.from_dict({exps: QQ.one})


def independent_indices(polys: Sequence[PolyElement]) -> list[int]:
    """Indices of a maximal linearly independent subfamily."""
    form = echelon([dict(p.iterterms()) for p in polys], QQ)
    return list(form.pivots)


# membership


def v_member(
    f: PolyElement | Hypersurface,
    handle: ElementHandle,
    alpha: RationalLike,
    *,
    method: str = "auto",
    budget: Budget | None = None,
) -> MembershipCertificate:
    """Decide m in V^alpha and m in V^>alpha.

    Raises:
        ValueError: m = 0 or an unknown method.
    """
    return vfiltration(_hypersurface(f), budget).member(handle, alpha, method=method)


# ideals


def window_kernel(
    f: PolyElement | Hypersurface,
    alpha: RationalLike,
    window: TruncationParams,
    *,
    budget: Budget | None = None,
) -> list[GraphElem]:
    """A basis of F_{k+1}V^alpha restricted to the window."""
    hs = _hypersurface(f)
    vf = vfiltration(hs, budget)
    test = vf.projection(alpha)
    cells = window.cells(len(hs.variables))
    with timed(f"window columns ({len(cells)} cells)", logger=logger):
        columns = [vf.column(test, level, exps) for level, exps in cells]
    basis = nullspace(columns, QQ)
    logger.debug(f"F_{window.k + 1}V^{format_rational(to_rational(alpha))}: {len(basis)} window elements")
    return [_cell_element(hs, zip(cells, vector, strict=True)) for vector in basis]


def higher_multiplier_ideal(
    f: PolyElement | Hypersurface,
    k: int,
    alpha: RationalLike,
    window: TruncationParams | None = None,
    *,
    budget: Budget | None = None,
) -> CertifiedIdeal:
    """The higher multiplier ideal of level k at alpha, inside a window.

    A monomial x^u of degree <= deg_bound is accepted when some tail at lower
    dt levels puts x^u dt^k + tail into V^alpha.
    """
    point = _positive(alpha)
    hs = _hypersurface(f)
    window = _window(hs, k, window)
    vf = vfiltration(hs, budget)
    test = vf.projection(point)
    cells = window.cells(len(hs.variables))
    tails = [cell for cell in cells if cell[0] < k]
    heads = [cell for cell in cells if cell[0] == k]
    with timed(f"higher multiplier ideal k={k}", logger=logger):
        tail_columns = [vf.column(test, *cell) for cell in tails]
        head_columns = [vf.column(test, *cell) for cell in heads]
        decided = span_coefficients(tail_columns, head_columns, QQ)
        tail_rank = echelon(tail_columns, QQ).rank
        full_rank = echelon(tail_columns + head_columns, QQ).rank

    accepted: dict[Exps, GraphElem] = {}
    for (_, exps), coefficients in zip(heads, decided, strict=True):
        if coefficients is None:
            continue
        weights = [((k, exps), QQ.one)] + [
            (cell, -c) for cell, c in zip(tails, coefficients, strict=True)
        ]
        accepted[exps] = _cell_element(hs, weights)
    logger.debug(f"accepted {len(accepted)} of {len(heads)} leading monomials")

    ideal = Ideal(hs.ring, (_monomial(hs, exps) for exps in accepted), budget=vf.engine.budget)
    witnesses = []
    for g in ideal.minimal_generators():
        (exps,) = g.itermonoms()
        element = accepted[exps]
        certificate = MembershipCertificate(
            ElementHandle.from_graph(element), point, True, None, "projection", tests=(test,)
        )
        witnesses.append(Witness(g, element, certificate))
    complete = len(heads) - (full_rank - tail_rank) == len(accepted)
    result = CertifiedIdeal("higher multiplier", point, ideal, window, tuple(witnesses), complete)
    logger.info(f"higher multiplier ideal k={k} alpha={format_rational(point)}: {result}")
    return result


def hodge_ideal(
    f: PolyElement | Hypersurface,
    k: int,
    alpha: RationalLike,
    window: TruncationParams | None = None,
    *,
    budget: Budget | None = None,
) -> CertifiedIdeal:
    """The Hodge ideal I_k(alpha D) as ev_{s=-alpha} of F_{k+1}V^alpha, times f^k."""
    point = _positive(alpha)
    hs = _hypersurface(f)
    window = _window(hs, k, window)
    kernel = window_kernel(hs, point, window, budget=budget)
    images = [hodge_normalize(w, k, point) for w in kernel]
    chosen = [i for i in independent_indices(images) if images[i]]
    witnesses = []
    for i in chosen:
        certificate = MembershipCertificate(
            ElementHandle.from_graph(kernel[i]),
            point,
            True,
            None,
            "projection",
            tests=(vfiltration(hs, budget).projection(point),),
        )
        witnesses.append(Witness(images[i], kernel[i], certificate))
    ideal = Ideal(hs.ring, (w.generator for w in witnesses), budget=budget)
    result = CertifiedIdeal("hodge", point, ideal, window, tuple(witnesses))
    logger.info(f"Hodge ideal k={k} alpha={format_rational(point)}: {result}")
    return result


def multiplier_ideal(
    f: PolyElement | Hypersurface,
    alpha: RationalLike,
    deg_bound: int = DEFAULT_DEG_BOUND,
    *,
    budget: Budget | None = None,
) -> CertifiedIdeal:
    """J((alpha - eps) D) from element b-functions of the monomials x^u delta."""
    point = _positive(alpha)
    hs = _hypersurface(f)
    vf = vfiltration(hs, budget)
    window = TruncationParams(deg_bound, deg_bound, 0)
    accepted: list[Exps] = []
    witnesses = []
    for exps in window_monomials(len(hs.variables), deg_bound):
        if any(all(a >= b for a, b in zip(exps, other, strict=True)) for other in accepted):
            continue
        handle = ElementHandle(hs, (_monomial(hs, exps),))
        certificate = vf.member(handle, point, method="bfunction")
        if certificate.member:
            accepted.append(exps)
            witnesses.append(Witness(_monomial(hs, exps), handle.graph_element(), certificate))
    ideal = Ideal(hs.ring, (w.generator for w in witnesses), budget=budget)
    return CertifiedIdeal("multiplier", point, ideal, window, tuple(witnesses))


# walls and continuity


@dataclass(frozen=True)
class WallSegment:
    """The ideal on (start, wall]."""

    start: Any
    wall: Any
    ideal: CertifiedIdeal


def jumping_walls(
    f: PolyElement | Hypersurface,
    k: int,
    lo: RationalLike,
    hi: RationalLike,
    window: TruncationParams | None = None,
    *,
    budget: Budget | None = None,
) -> list[WallSegment]:
    """Segments of (lo, hi] on which the higher multiplier ideal is constant.

    The ideal is left continuous, so its value on (previous point, w] is
    the value at w; consecutive equal values are merged.
    """
    low, high = to_rational(lo), to_rational(hi)
    if low < 0 or high <= low:
        raise ValueError(f"bad range ({format_rational(low)}, {format_rational(high)}]")
    hs = _hypersurface(f)
    vf = vfiltration(hs, budget)
    points = vf.candidate_walls(low, high)
    if not points or points[-1] != high:
        points.append(high)
    segments: list[WallSegment] = []
    start = low
    for point in points:
        ideal = higher_multiplier_ideal(hs, k, point, window, budget=budget)
        if segments and equal_ideals(segments[-1].ideal.ideal, ideal.ideal):
            previous = segments.pop()
            segments.append(WallSegment(previous.start, point, ideal))
        else:
            segments.append(WallSegment(start, point, ideal))
        start = point
    return segments


@dataclass(frozen=True)
class LeftContinuityReport:
    alpha: Any
    delta: Any
    at_alpha: CertifiedIdeal
    below_alpha: CertifiedIdeal
    higher_multiplier: CertifiedIdeal

    @property
    def left_continuous(self) -> bool:
        return equal_ideals(self.at_alpha.ideal, self.below_alpha.ideal)

    @property
    def hodge_equals_higher(self) -> bool:
        return equal_ideals(self.at_alpha.ideal, self.higher_multiplier.ideal)

    @property
    def consistent(self) -> bool:
        """Left continuity holds exactly when both ideals agree at alpha."""
        return self.left_continuous == self.hodge_equals_higher


def left_continuity_test(
    f: PolyElement | Hypersurface,
    k: int,
    alpha: RationalLike,
    window: TruncationParams | None = None,
    *,
    budget: Budget | None = None,
) -> LeftContinuityReport:
    """Compare I_k at alpha with I_k at alpha - delta, delta half the gap to
    the nearest candidate wall below alpha."""
    point = _positive(alpha)
    hs = _hypersurface(f)
    wall = vfiltration(hs, budget).nearest_wall_below(point)
    delta = (point - wall) / 2 if wall is not None else point / 2
    report = LeftContinuityReport(
        point,
        delta,
        hodge_ideal(hs, k, point, window, budget=budget),
        hodge_ideal(hs, k, point - delta, window, budget=budget),
        higher_multiplier_ideal(hs, k, point, window, budget=budget),
    )
    logger.info(
        f"I_{k} at {format_rational(point)}: "
        f"{'left continuous' if report.left_continuous else 'not left continuous'}"
    )
    return report


# strictness


@dataclass(frozen=True)
class StrictnessReport:
    """Window checks of 0 -> F_k V -> F_{k+1} V -> F_k(O(*D) f^-alpha) -> 0."""

    k: int
    alpha: Any
    injective: bool
    evaluation_matches: bool
    kernel_in_image: bool
    image_in_kernel: bool
    lower_dimension: int
    kernel_dimension: int

    @property
    def passed(self) -> bool:
        return (
            self.injective
            and self.evaluation_matches
            and self.kernel_in_image
            and self.image_in_kernel
        )


def _times_s_plus_alpha(element: GraphElem, alpha: Any) -> GraphElem:
    return element.apply("s") + element.scale(alpha)


def _preimage(element: GraphElem, alpha: Any) -> GraphElem | None:
    """The unique w with (s + alpha) w = element, if it is polynomial."""
    hs = element.hypersurface
    f = hs.f
    top = element.level
    if top <= 0:
        g0 = element.coeffs.get(0, hs.ring.zero)
        if not alpha:
            return GraphElem(hs, {}) if not g0 else None
        return GraphElem(hs, {0: g0 * (QQ.one / alpha)})
    coeffs: dict[int, PolyElement] = {}
    quotient, remainder = (-element.coeffs[top]).div(f)
    if remainder:
        return None
    coeffs[top - 1] = quotient
    for level in range(top - 1, 0, -1):
        numerator = coeffs[level] * (level + alpha) - element.coeffs.get(level, hs.ring.zero)
        quotient, remainder = numerator.div(f)
        if remainder:
            return None
        coeffs[level - 1] = quotient
    candidate = GraphElem(hs, coeffs)
    return candidate if _times_s_plus_alpha(candidate, alpha) == element else None


def strictness_check(
    f: PolyElement | Hypersurface,
    k: int,
    alpha: RationalLike,
    window: TruncationParams | None = None,
    *,
    budget: Budget | None = None,
) -> StrictnessReport:
    """Check, inside the window, that s + alpha is injective on F_kV^alpha,
    that ev_{s=-alpha} times f^k agrees with the Hodge normalization, and
    that the kernel of ev is (s + alpha) F_kV^alpha."""
    point = to_rational(alpha)
    if point < 0:
        raise ValueError(f"alpha must be >= 0, got {format_rational(point)}")
    hs = _hypersurface(f)
    window = _window(hs, k, window)
    vf = vfiltration(hs, budget)
    upper = window_kernel(hs, point, window, budget=budget)

    lower_window = window.lowered(hs)
    lower = window_kernel(hs, point, lower_window, budget=budget) if lower_window else []
    images = [_times_s_plus_alpha(w, point) for w in lower]
    image_vectors = [
        {(level, monom): c for level, g in w.coeffs.items() for monom, c in g.iterterms()}
        for w in images
    ]
    injective = echelon(image_vectors, QQ).rank == len(lower)

    evaluation_matches = True
    for w in upper:
        twisted = ev(rho_inv(w), point)
        value = twisted.section
        numerator = value.numerator * hs.f ** k
        quotient, remainder = numerator.div(hs.f**value.f_power)
        if remainder or quotient != hodge_normalize(w, k, point):
            evaluation_matches = False
            break

    image_in_kernel = all(not hodge_normalize(w, k, point) for w in images)

    normalized = [hodge_normalize(w, k, point) for w in upper]
    relations = nullspace([dict(h.iterterms()) for h in normalized], QQ)
    kernel_in_image = True
    for relation in relations:
        z = GraphElem(hs, {})
        for c, w in zip(relation, upper, strict=True):
            if c:
                z = z + w.scale(c)
        if not z:
            continue
        w = _preimage(z, point)
        if w is None or (w and not vf.contains(ElementHandle.from_graph(w), point)):
            kernel_in_image = False
            break

    report = StrictnessReport(
        k,
        point,
        injective,
        evaluation_matches,
        kernel_in_image,
        image_in_kernel,
        len(lower),
        len(relations),
    )
    logger.info(f"strictness at k={k}, alpha={format_rational(point)}: {'pass' if report.passed else 'FAIL'}")
    return report


# claims


class ClaimVerdict(Enum):
    VERIFIED = "verified-in-window"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ClaimReport:
    verdict: ClaimVerdict
    sound: tuple[tuple[str, bool], ...] = ()
    unexpected: tuple[str, ...] = ()
    redundant_given: tuple[str, ...] = ()
    computed: CertifiedIdeal | None = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is ClaimVerdict.VERIFIED


def _redundant(claimed: Ideal) -> list[PolyElement]:
    redundant = []
    gens = list(claimed.generators)
    for i, g in enumerate(gens):
        rest = claimed.with_generators(gens[:i] + gens[i + 1 :])
        if rest.generators and rest.contains(g):
            redundant.append(g)
    return redundant


def verify_claimed_ideal(
    f: PolyElement | Hypersurface,
    k: int,
    alpha: RationalLike,
    claimed: Ideal,
    window: TruncationParams | None = None,
    *,
    budget: Budget | None = None,
) -> ClaimReport:
    """Machine-check a claimed value of the higher multiplier ideal.

    Soundness: every claimed generator g admits a tail with g dt^k + tail in
    V^alpha. Window completeness: no monomial of the window outside the
    claimed ideal admits one. A budget overrun gives "inconclusive".
    """
    point = _positive(alpha)
    hs = _hypersurface(f)
    if claimed.ring != hs.ring:
        claimed = Ideal(hs.ring, (g.set_ring(hs.ring) for g in claimed.generators))
    window = _window(hs, k, window)
    redundant = tuple(format_poly(g) for g in _redundant(claimed))
    try:
        computed = higher_multiplier_ideal(hs, k, point, window, budget=budget)
        vf = vfiltration(hs, budget)
        test = vf.projection(point)
        tails = [cell for cell in window.cells(len(hs.variables)) if cell[0] < k]
        tail_columns = [vf.column(test, *cell) for cell in tails]
        candidates = [
            vf.element_column(test, ElementHandle(hs, (*([hs.ring.zero] * k), g)))
            for g in claimed.generators
        ]
        decided = span_coefficients(tail_columns, candidates, QQ)
    except BudgetExceeded as e:
        return ClaimReport(ClaimVerdict.INCONCLUSIVE, redundant_given=redundant, reason=str(e))

    sound = tuple(
        (format_poly(g), coefficients is not None)
        for g, coefficients in zip(claimed.generators, decided, strict=True)
    )
    unexpected = tuple(
        format_poly(g) for g in computed.generators if not claimed.contains(g)
    )
    verified = all(ok for _, ok in sound) and not unexpected and computed.complete
    if verified:
        verdict = ClaimVerdict.VERIFIED
    elif not computed.complete and all(ok for _, ok in sound) and not unexpected:
        verdict = ClaimVerdict.INCONCLUSIVE
    else:
        verdict = ClaimVerdict.REFUTED
    return ClaimReport(verdict, sound, unexpected, redundant, computed)


@dataclass(frozen=True)
class SingularityClaim:
    """Predicted higher multiplier ideal of an ordinary singular point."""

    f: PolyElement
    k: int
    alpha: Any
    ideal: Ideal
    power: int = field(default=0)


def ordinary_singularity_claims(
    multiplicity: int, dimension: int, variables: Sequence[str] | None = None
) -> list[SingularityClaim]:
    """Claims for f = x_1^m + ... + x_n^m with n = k*m + r, 0 <= r < m:
    the ideal at (j + r)/m is the j-th power of the maximal ideal for
    0 <= j <= min(m - r, m - 1)."""
    m, n = multiplicity, dimension
    if m < 2 or n < 1:
        raise ValueError("need multiplicity >= 2 and at least one variable")
    if variables is None:
        variables = ("x", "y", "z")[:n] if n <= 3 else tuple(f"x{i}" for i in range(1, n + 1))
    if len(variables) != n:
        raise ValueError(f"expected {n} variable names")
    ring = polynomial_ring(variables)
    f = sum((g**m for g in ring.gens), ring.zero)
    k, r = divmod(n, m)
    claims = []
    for j in range(min(m - r, m - 1) + 1):
        if j + r == 0:
            continue
        power = [
            ring.from_dict({exps: QQ.one})
            for exps in itertools.product(range(j + 1), repeat=n)
            if sum(exps) == j
        ]
        claims.append(SingularityClaim(f, k, QQ(j + r, m), Ideal(ring, power), j))
    return claims


# comparison modulo f


@dataclass(frozen=True)
class DivisorComparison:
    hodge: CertifiedIdeal
    higher_multiplier: CertifiedIdeal
    agree_modulo_f: bool


def divisor_comparison(
    f: PolyElement | Hypersurface,
    k: int,
    alpha: RationalLike,
    window: TruncationParams | None = None,
    *,
    budget: Budget | None = None,
) -> DivisorComparison:
    """Check that I_k(alpha D) and the higher multiplier ideal agree modulo f."""
    hs = _hypersurface(f)
    hodge = hodge_ideal(hs, k, alpha, window, budget=budget)
    higher = higher_multiplier_ideal(hs, k, alpha, window, budget=budget)
    principal = Ideal(hs.ring, [hs.f])
    agree = equal_ideals(ideal_sum(hodge.ideal, principal), ideal_sum(higher.ideal, principal))
    return DivisorComparison(hodge, higher, agree)


def t_shift(handle: ElementHandle) -> ElementHandle:
    """t m, which lies in V^(alpha+1) whenever m lies in V^alpha."""
    return handle.times_t()
