"""Reports: canonical JSON, a digest that ignores timings, and text rendering.

Every subcommand builds one ``Report``. Its JSON keys come out in a fixed
order and generator lists are sorted, so identical arguments give
byte-identical output apart from the ``timings`` block.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import click
from rich.console import Console
from rich.table import Table

from hodge_vfilt import __version__
from hodge_vfilt.bfun import BFunction, Stratum
from hodge_vfilt.family import Fiber, FlatnessCertificate, P1Family, format_point
from hodge_vfilt.polyalg.ideal import Ideal
from hodge_vfilt.polyalg.orders import LEX
from hodge_vfilt.polyalg.rationals import format_rational
from hodge_vfilt.render import format_generators, format_poly
from hodge_vfilt.vfilt import CertifiedIdeal, MembershipCertificate, TruncationParams
from hodge_vfilt.weyl import format_weyl

SCHEMA_VERSION = 1


@dataclass
class Report:
    """What a subcommand prints.

    ``passed`` is None for pure computations and a verdict for checks.
    """

    command: str
    arguments: dict[str, Any]
    results: dict[str, Any] = field(default_factory=dict)
    certificates: dict[str, Any] = field(default_factory=dict)
    complete: bool = True
    passed: bool | None = None
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, *, timings: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "command": self.command,
            "arguments": self.arguments,
            "results": self.results,
            "certificates": self.certificates,
            "complete": self.complete,
            "passed": self.passed,
        }
        if timings:
            data["timings"] = self.timings
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @property
    def digest(self) -> str:
        """SHA-256 of the compact canonical JSON without timings."""
        canonical = json.dumps(
            self.to_dict(timings=False),
            sort_keys=True,
            separators=(",", ":"),
            ensure_ascii=False,
        )
        return hashlib.sha256(canonical.encode()).hexdigest()


# serializers


def ideal_generators(ideal: Ideal, order: str = "grevlex") -> list[str]:
    """Reduced-basis generators in canonical order."""
    if order == "lex":
        return format_generators(ideal.groebner(LEX))
    return format_generators(ideal.minimal_generators())


def window_json(window: TruncationParams) -> dict[str, int]:
    return {"k": window.k, "deg_bound": window.deg_bound, "tail_deg": window.tail_deg}


def bfunction_json(b: BFunction) -> dict[str, Any]:
    return {
        "factored": str(b),
        "roots": [format_rational(r) for r in b.roots],
        "degree": b.degree,
    }


def bfunction_certificate_json(b: BFunction) -> dict[str, Any]:
    data: dict[str, Any] = {}
    if b.certificate is not None:
        data["operator"] = format_weyl(b.certificate)
        data["verified"] = True
    if b.certificate_bound is not None:
        data["degree_bound"] = b.certificate_bound
    if b.minimality:
        data["minimality"] = [
            {"root": format_rational(root), "infeasible_without": ok}
            for root, ok in b.minimality
        ]
    return data


def membership_json(certificate: MembershipCertificate) -> dict[str, Any]:
    data: dict[str, Any] = {
        "verdict": certificate.verdict.value,
        "in_v": certificate.member,
        "in_v_strict": certificate.strict,
        "method": certificate.method,
    }
    if certificate.bfunction is not None:
        data["bfunction"] = str(certificate.bfunction)
    if certificate.tests:
        data["projection"] = [
            {"shift": test.shift, "multiplier": str(test.multiplier)}
            for test in certificate.tests
        ]
    return data


def certified_ideal_json(ideal: CertifiedIdeal, order: str = "grevlex") -> dict[str, Any]:
    return {
        "kind": ideal.kind,
        "alpha": format_rational(ideal.alpha),
        "generators": ideal_generators(ideal.ideal, order),
        "window": window_json(ideal.window),
        "complete": ideal.complete,
    }


def witnesses_json(ideal: CertifiedIdeal) -> list[dict[str, Any]]:
    witnesses = sorted(ideal.witnesses, key=lambda w: format_generators([w.generator]))
    return [
        {
            "generator": format_poly(w.generator),
            "element": str(w.element),
            "method": w.certificate.method,
        }
        for w in witnesses
    ]


def stratum_json(stratum: Stratum) -> dict[str, Any]:
    return {
        "equations": list(stratum.equations),
        "inequations": list(stratum.inequations),
        "bfunction": None if stratum.bfunction is None else str(stratum.bfunction),
    }


def flatness_json(certificate: FlatnessCertificate) -> dict[str, Any]:
    expected = certificate.expected
    return {
        "method": certificate.method,
        "reference_points": [format_rational(p) for p in certificate.reference_points],
        "expected": "infinite" if expected == float("inf") else expected,
        "observed": "infinite" if certificate.observed == float("inf") else certificate.observed,
        "passed": certificate.passed,
    }


def family_json(family: P1Family, fibers: list[Fiber]) -> tuple[dict[str, Any], dict[str, Any]]:
    """Results and certificates of a flat-limit computation."""
    results = {
        "charts": {
            "beta": format_generators(family.chart_beta.generators),
            "u": format_generators(family.chart_u.generators),
        },
        "fibers": {
            format_point(fiber.point): format_generators(fiber.ideal.minimal_generators())
            for fiber in fibers
        },
    }
    certificates = {
        "bad_factors": [format_poly(f) for f in family.bad_factors],
        "gluing": {
            "beta_generators": family.gluing.beta_generators,
            "u_generators": family.gluing.u_generators,
            "passed": True,
        },
        "fibers": {
            format_point(fiber.point): flatness_json(fiber.certificate) for fiber in fibers
        },
    }
    return results, certificates


# output

console = Console()


def _flatten(prefix: str, value: Any) -> list[tuple[str, str]]:
    if isinstance(value, dict):
        rows = []
        for key, inner in value.items():
            rows.extend(_flatten(f"{prefix}.{key}" if prefix else str(key), inner))
        return rows
    if isinstance(value, list) and all(isinstance(v, str) for v in value):
        return [(prefix, ", ".join(value) if value else "-")]
    if isinstance(value, list):
        rows = []
        for i, inner in enumerate(value):
            rows.extend(_flatten(f"{prefix}[{i}]", inner))
        return rows
    return [(prefix, "-" if value is None else str(value))]


def render_text(report: Report, target: Console) -> None:
    table = Table(title=f"vf {report.command}")
    table.add_column("Field", style="cyan", no_wrap=True)
    table.add_column("Value", style="white")
    for key, value in _flatten("", report.results):
        table.add_row(key, value)
    for key, value in _flatten("certificates", report.certificates):
        table.add_row(key, value, style="dim")
    if report.passed is not None:
        table.add_row("passed", "yes" if report.passed else "NO", style="green" if report.passed else "red")
    if not report.complete:
        table.add_row("complete", "no (window search not exhaustive)", style="yellow")
    target.print(table)


def emit(report: Report, output_format: str, out: Path | None) -> None:
    """Write the report as JSON or as a rich table, to ``out`` or stdout."""
    if output_format == "json":
        text = report.to_json()
        if out is None:
            click.echo(text)
        else:
            out.write_text(text + "\n")
        return
    if out is None:
        render_text(report, console)
        return
    with open(out, "w") as handle:
        render_text(report, Console(file=handle, width=120))
