"""One runner per computation, each returning a ``Report``.

The click commands in ``hodge_vfilt.cli`` and the self-test corpus both go
through these functions.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from sympy.polys.rings import PolyElement

from hodge_vfilt.bfun import (
    ElementHandle,
    ann_fs,
    global_bfunction,
    log_canonical_threshold,
    minimal_exponent,
    parametric_element_bfunction,
)
from hodge_vfilt.cli_handlers.report import (
    Report,
    bfunction_certificate_json,
    bfunction_json,
    certified_ideal_json,
    family_json,
    ideal_generators,
    membership_json,
    stratum_json,
    window_json,
    witnesses_json,
)
from hodge_vfilt.config import Settings
from hodge_vfilt.family import (
    INFINITY,
    PARAMETER,
    family_ring,
    flat_limit,
    flat_limit_check,
    parse_point,
)
from hodge_vfilt.graphmod import Hypersurface
from hodge_vfilt.parsing import (
    infer_variables,
    parse_element,
    parse_generators,
    parse_poly,
    parse_variables,
)
from hodge_vfilt.polyalg.ideal import Ideal, ParamCoefficientIdeal, polynomial_ring
from hodge_vfilt.polyalg.rationals import RationalLike, format_rational, to_rational
from hodge_vfilt.render import format_generators, format_poly
from hodge_vfilt.utils.logging import make_logger, timed
from hodge_vfilt.vfilt import (
    TruncationParams,
    classify,
    divisor_comparison,
    higher_multiplier_ideal,
    hodge_ideal,
    jumping_walls,
    left_continuity_test,
    multiplier_ideal,
    ordinary_singularity_claims,
    strictness_check,
    v_member,
    verify_claimed_ideal,
)
from hodge_vfilt.weyl import format_weyl

logger = make_logger(__name__)


@dataclass(frozen=True)
class Session:
    """Variables, f and the settings every subcommand shares."""

    variables: tuple[str, ...]
    f: PolyElement
    settings: Settings = field(default_factory=Settings)

    @classmethod
    def create(
        cls, variables: str | Sequence[str], f: str, settings: Settings | None = None
    ) -> Session:
        """Parse and validate the variable list and f.

        Raises:
            ValueError: malformed variable names.
            ReservedVariable: a variable collides with an internal name.
            ParseError: f does not parse.
        """
        names = parse_variables(variables)
        ring = polynomial_ring(names)
        return cls(names, parse_poly(f, ring), settings or Settings())

    @cached_property
    def hypersurface(self) -> Hypersurface:
        return Hypersurface(self.f)

    def window(self, k: int) -> TruncationParams:
        return TruncationParams.for_hypersurface(
            self.hypersurface, k, self.settings.deg_bound, self.settings.tail_deg
        )

    def arguments(self, **extra: Any) -> dict[str, Any]:
        data: dict[str, Any] = {"vars": list(self.variables), "f": format_poly(self.f)}
        for key, value in extra.items():
            if value is not None:
                data[key] = value
        return data


def run_bfun(session: Session, *, certify: bool = True) -> Report:
    report = Report("bfun", session.arguments(certify=certify))
    with timed("bfunction", report.timings, logger):
        b = global_bfunction(session.hypersurface, budget=session.settings.budget, certify=certify)
    exponent = minimal_exponent(session.hypersurface, budget=session.settings.budget)
    threshold = log_canonical_threshold(session.hypersurface, budget=session.settings.budget)
    report.results = {
        "bfunction": bfunction_json(b),
        "minimal_exponent": "oo" if exponent is None else format_rational(exponent),
        "lct": format_rational(threshold),
    }
    if certify:
        report.certificates = {"functional_equation": bfunction_certificate_json(b)}
    return report


def run_annfs(session: Session) -> Report:
    report = Report("annfs", session.arguments())
    with timed("annfs", report.timings, logger):
        generators = ann_fs(session.hypersurface, budget=session.settings.budget)
    report.results = {"generators": sorted(format_weyl(g) for g in generators)}
    return report


def run_vmember(
    session: Session,
    *,
    element: str,
    alpha: RationalLike,
    method: str = "auto",
    params: str | None = None,
) -> Report:
    point = to_rational(alpha)
    report = Report(
        "vmember",
        session.arguments(element=element, alpha=format_rational(point), method=method, params=params),
    )
    hs = session.hypersurface
    if params:
        names = parse_variables(params)
        ring = polynomial_ring((*names, *session.variables))
        handle = ElementHandle(hs, parse_element(element, ring), names)
        with timed("strata", report.timings, logger):
            strata = parametric_element_bfunction(hs, handle, budget=session.settings.budget)
        report.results = {
            "strata": [
                {
                    **stratum_json(stratum),
                    "verdict": None
                    if stratum.bfunction is None
                    else classify(stratum.bfunction, point).value,
                }
                for stratum in strata
            ]
        }
        return report
    handle = ElementHandle(hs, parse_element(element, hs.ring))
    with timed("membership", report.timings, logger):
        certificate = v_member(hs, handle, point, method=method, budget=session.settings.budget)
    report.results = membership_json(certificate)
    return report


def run_hmi(
    session: Session,
    *,
    k: int,
    alpha: RationalLike,
    claimed: Sequence[str] | str | None = None,
) -> Report:
    point = to_rational(alpha)
    window = session.window(k)
    report = Report("hmi", session.arguments(k=k, alpha=format_rational(point)))
    with timed("higher multiplier ideal", report.timings, logger):
        ideal = higher_multiplier_ideal(
            session.hypersurface, k, point, window, budget=session.settings.budget
        )
    report.results = certified_ideal_json(ideal, session.settings.order)
    report.certificates = {"witnesses": witnesses_json(ideal)}
    report.complete = ideal.complete
    if claimed is not None:
        verification = _verify(session, k, point, claimed, window, report)
        report.results["verification"] = verification
    return report


def _claimed_ideal(session: Session, claimed: Sequence[str] | str) -> Ideal:
    ring = session.hypersurface.ring
    source = claimed if isinstance(claimed, str) else "; ".join(claimed)
    return Ideal(ring, parse_generators(source, ring), budget=session.settings.budget)


def _verify(
    session: Session,
    k: int,
    alpha: Any,
    claimed: Sequence[str] | str,
    window: TruncationParams,
    report: Report,
) -> dict[str, Any]:
    ideal = _claimed_ideal(session, claimed)
    with timed("verify claim", report.timings, logger):
        verdict = verify_claimed_ideal(
            session.hypersurface, k, alpha, ideal, window, budget=session.settings.budget
        )
    report.passed = verdict.passed
    return {
        "claimed": format_generators(ideal.generators),
        "verdict": verdict.verdict.value,
        "sound": {g: ok for g, ok in verdict.sound},
        "missing_from_claim": list(verdict.unexpected),
        "redundant_given": list(verdict.redundant_given),
        **({"reason": verdict.reason} if verdict.reason else {}),
    }


def run_verify(
    session: Session, *, k: int, alpha: RationalLike, claimed: Sequence[str] | str
) -> Report:
    point = to_rational(alpha)
    window = session.window(k)
    report = Report("verify", session.arguments(k=k, alpha=format_rational(point)))
    report.results = _verify(session, k, point, claimed, window, report)
    report.results["window"] = window_json(window)
    return report


def run_hodge(session: Session, *, k: int, alpha: RationalLike) -> Report:
    point = to_rational(alpha)
    report = Report("hodge", session.arguments(k=k, alpha=format_rational(point)))
    with timed("hodge ideal", report.timings, logger):
        ideal = hodge_ideal(
            session.hypersurface, k, point, session.window(k), budget=session.settings.budget
        )
    report.results = certified_ideal_json(ideal, session.settings.order)
    report.certificates = {"witnesses": witnesses_json(ideal)}
    return report


def run_walls(session: Session, *, k: int, lo: RationalLike, hi: RationalLike) -> Report:
    low, high = to_rational(lo), to_rational(hi)
    report = Report(
        "walls", session.arguments(k=k, lo=format_rational(low), hi=format_rational(high))
    )
    with timed("walls", report.timings, logger):
        segments = jumping_walls(
            session.hypersurface, k, low, high, session.window(k), budget=session.settings.budget
        )
    report.results = {
        "segments": [
            {
                "interval": f"({format_rational(s.start)}, {format_rational(s.wall)}]",
                "generators": ideal_generators(s.ideal.ideal, session.settings.order),
            }
            for s in segments
        ],
        "walls": [format_rational(s.wall) for s in segments[:-1]],
    }
    report.complete = all(s.ideal.complete for s in segments)
    return report


def run_leftcont(session: Session, *, k: int, alpha: RationalLike) -> Report:
    point = to_rational(alpha)
    report = Report("leftcont", session.arguments(k=k, alpha=format_rational(point)))
    with timed("left continuity", report.timings, logger):
        result = left_continuity_test(
            session.hypersurface, k, point, session.window(k), budget=session.settings.budget
        )
    order = session.settings.order
    report.results = {
        "left_continuous": result.left_continuous,
        "hodge_equals_higher": result.hodge_equals_higher,
        "delta": format_rational(result.delta),
        "hodge_at_alpha": ideal_generators(result.at_alpha.ideal, order),
        "hodge_below_alpha": ideal_generators(result.below_alpha.ideal, order),
        "higher_multiplier": ideal_generators(result.higher_multiplier.ideal, order),
    }
    report.complete = result.higher_multiplier.complete
    report.passed = result.consistent
    return report


def run_family_limit(
    variables: str | Sequence[str] | None,
    gens: str,
    points: Sequence[RationalLike] | str = (),
    settings: Settings | None = None,
) -> Report:
    settings = settings or Settings()
    if variables:
        names = parse_variables(variables)
    else:
        names = infer_variables(gens, exclude=[PARAMETER])
    ring = family_ring(names)
    generators = parse_generators(gens, ring)
    if isinstance(points, str):
        points = [p for p in points.split(",") if p.strip()]
    where = [parse_point(p) for p in points]
    finite = [p for p in where if p != INFINITY]
    report = Report(
        "family-limit",
        {
            "vars": list(names),
            "gens": format_generators(generators),
            "points": [format_rational(p) for p in finite],
        },
    )
    family = ParamCoefficientIdeal.polynomial(ring, "beta", generators)
    with timed("flat limit", report.timings, logger):
        extended, fibers = flat_limit(family, finite, budget=settings.budget)
    report.results, report.certificates = family_json(extended, fibers)
    return report


def run_limit_check(session: Session, *, k: int, alpha: RationalLike) -> Report:
    point = to_rational(alpha)
    report = Report("limit-check", session.arguments(k=k, alpha=format_rational(point)))
    with timed("flat limit check", report.timings, logger):
        check = flat_limit_check(
            session.hypersurface, k, point, session.window(k), budget=session.settings.budget
        )
    order = session.settings.order
    family = check.family
    report.results = {
        "interval": f"({format_rational(family.start)}, {format_rational(family.alpha)}]",
        "family": format_generators(family.family.numerators),
        "limit": ideal_generators(check.limit.ideal, order),
        "higher_multiplier": ideal_generators(check.higher_multiplier, order),
    }
    report.certificates = {
        "samples": {format_rational(p): ok for p, ok in family.sample_checks},
        "limit_flatness": {
            "method": check.limit.certificate.method,
            "expected": str(check.limit.certificate.expected),
            "observed": str(check.limit.certificate.observed),
        },
    }
    report.complete = check.complete
    report.passed = check.passed
    return report


# checks


def run_strictness(session: Session, *, k: int, alpha: RationalLike) -> Report:
    point = to_rational(alpha)
    report = Report("strictness", session.arguments(k=k, alpha=format_rational(point)))
    with timed("strictness", report.timings, logger):
        result = strictness_check(
            session.hypersurface, k, point, session.window(k), budget=session.settings.budget
        )
    report.results = {
        "injective": result.injective,
        "evaluation_matches": result.evaluation_matches,
        "kernel_in_image": result.kernel_in_image,
        "image_in_kernel": result.image_in_kernel,
        "lower_dimension": result.lower_dimension,
        "kernel_dimension": result.kernel_dimension,
    }
    report.passed = result.passed
    return report


def run_divisor(session: Session, *, k: int, alpha: RationalLike) -> Report:
    point = to_rational(alpha)
    report = Report("divisor", session.arguments(k=k, alpha=format_rational(point)))
    result = divisor_comparison(
        session.hypersurface, k, point, session.window(k), budget=session.settings.budget
    )
    order = session.settings.order
    report.results = {
        "hodge": ideal_generators(result.hodge.ideal, order),
        "higher_multiplier": ideal_generators(result.higher_multiplier.ideal, order),
        "agree_modulo_f": result.agree_modulo_f,
    }
    report.passed = result.agree_modulo_f
    return report


def run_multiplier(session: Session, *, alpha: RationalLike) -> Report:
    point = to_rational(alpha)
    report = Report("multiplier", session.arguments(alpha=format_rational(point)))
    ideal = multiplier_ideal(
        session.hypersurface, point, session.settings.deg_bound, budget=session.settings.budget
    )
    report.results = certified_ideal_json(ideal, session.settings.order)
    return report


def run_ordinary(
    multiplicity: int, dimension: int, settings: Settings | None = None
) -> Report:
    """Check every ordinary singularity claim for sum x_i^m."""
    settings = settings or Settings()
    claims = ordinary_singularity_claims(multiplicity, dimension)
    report = Report("ordinary", {"multiplicity": multiplicity, "dimension": dimension})
    checks = []
    for claim in claims:
        hs = Hypersurface(claim.f)
        window = TruncationParams.for_hypersurface(hs, claim.k, settings.deg_bound, settings.tail_deg)
        verdict = verify_claimed_ideal(hs, claim.k, claim.alpha, claim.ideal, window, budget=settings.budget)
        checks.append(
            {
                "k": claim.k,
                "alpha": format_rational(claim.alpha),
                "claimed": format_generators(claim.ideal.generators),
                "verdict": verdict.verdict.value,
            }
        )
    report.results = {"f": format_poly(claims[0].f) if claims else None, "claims": checks}
    report.passed = all(c["verdict"] == "verified-in-window" for c in checks)
    return report
