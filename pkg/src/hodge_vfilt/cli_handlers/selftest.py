"""Self-test corpus runner.

Loads the bundled YAML corpus, runs each entry through the same runner the
matching subcommand uses, and compares selected report fields with the
expected values.

Corpus structure::

    defaults:
      deg_bound: 4          # window settings applied to every entry
    entries:
      - name: cusp_bfunction
        command: bfun
        quick: true
        args: {vars: "x,y", f: "x^2 + y^3"}
        expect:
          results.bfunction.factored: "(s+1)(s+5/6)(s+7/6)"
"""

from __future__ import annotations

import importlib.resources
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml
from rich.console import Console
from rich.table import Table

from hodge_vfilt.cli_handlers import commands
from hodge_vfilt.cli_handlers.report import Report
from hodge_vfilt.config import Settings
from hodge_vfilt.errors import BudgetExceeded, HodgeVfiltError
from hodge_vfilt.utils.logging import make_logger

logger = make_logger(__name__)
console = Console()

_ENTRY_KEYS = {"name", "command", "args", "expect", "quick", "settings"}
_SETTING_KEYS = {"deg_bound", "tail_deg", "budget"}

SESSION_RUNNERS: dict[str, Callable[..., Report]] = {
    "bfun": commands.run_bfun,
    "annfs": commands.run_annfs,
    "vmember": commands.run_vmember,
    "hmi": commands.run_hmi,
    "hodge": commands.run_hodge,
    "walls": commands.run_walls,
    "leftcont": commands.run_leftcont,
    "limit-check": commands.run_limit_check,
    "thm12-check": commands.run_limit_check,
    "verify": commands.run_verify,
    "strictness": commands.run_strictness,
    "divisor": commands.run_divisor,
    "multiplier": commands.run_multiplier,
}


@dataclass
class CorpusEntry:
    name: str
    command: str
    args: dict[str, Any]
    expect: dict[str, Any]
    quick: bool = False
    settings: dict[str, Any] = field(default_factory=dict)


@dataclass
class EntryResult:
    """Result of a single corpus entry."""

    name: str
    passed: bool
    duration: float
    digest: str | None = None
    error: str | None = None


def bundled_corpus() -> Path:
    return Path(str(importlib.resources.files("hodge_vfilt.data").joinpath("corpus.yaml")))


def load_corpus(path: Path | None = None) -> list[CorpusEntry]:
    """Load and validate a corpus YAML file (the bundled one by default)."""
    path = path or bundled_corpus()
    with open(path) as f:
        raw = yaml.safe_load(f)

    if not isinstance(raw, dict):
        raise ValueError(f"Corpus file must be a YAML mapping, got {type(raw)}")
    entries = raw.get("entries")
    if not entries or not isinstance(entries, list):
        raise ValueError("Corpus file must have a non-empty 'entries' list")
    defaults = raw.get("defaults") or {}
    unknown = set(defaults) - _SETTING_KEYS
    if unknown:
        raise ValueError(f"Unknown default keys: {', '.join(sorted(unknown))}")

    loaded = []
    seen = set()
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or "name" not in entry:
            raise ValueError(f"Entry #{i + 1} missing required 'name' key")
        name = entry["name"]
        if name in seen:
            raise ValueError(f"Duplicate entry name {name!r}")
        seen.add(name)
        unknown = set(entry) - _ENTRY_KEYS
        if unknown:
            raise ValueError(f"Entry {name!r}: unknown keys {', '.join(sorted(unknown))}")
        command = entry.get("command")
        if command not in SESSION_RUNNERS and command not in ("family-limit", "ordinary"):
            raise ValueError(f"Entry {name!r}: unknown command {command!r}")
        if not entry.get("expect"):
            raise ValueError(f"Entry {name!r} has nothing to check")
        loaded.append(
            CorpusEntry(
                name=name,
                command=command,
                args=dict(entry.get("args") or {}),
                expect=dict(entry["expect"]),
                quick=bool(entry.get("quick", False)),
                settings={**defaults, **(entry.get("settings") or {})},
            )
        )
    return loaded


def _settings_for(entry: CorpusEntry, base: Settings) -> Settings:
    return base.override(
        deg_bound=entry.settings.get("deg_bound"),
        tail_deg=entry.settings.get("tail_deg"),
        max_pairs=entry.settings.get("budget"),
    )


def run_entry(entry: CorpusEntry, base: Settings | None = None) -> Report:
    settings = _settings_for(entry, base or Settings())
    args = dict(entry.args)
    if entry.command == "family-limit":
        return commands.run_family_limit(settings=settings, **args)
    if entry.command == "ordinary":
        return commands.run_ordinary(settings=settings, **args)
    session = commands.Session.create(args.pop("vars"), args.pop("f"), settings)
    return SESSION_RUNNERS[entry.command](session, **args)


def lookup(data: dict[str, Any], path: str) -> Any:
    """Follow a dotted path through nested mappings."""
    value: Any = data
    for key in path.split("."):
        if not isinstance(value, dict) or key not in value:
            raise KeyError(path)
        value = value[key]
    return value


def mismatches(report: Report, expect: dict[str, Any]) -> list[str]:
    data = report.to_dict(timings=False)
    problems = []
    for path, expected in expect.items():
        try:
            actual = lookup(data, path)
        except KeyError:
            problems.append(f"{path}: missing")
            continue
        if actual != expected:
            problems.append(f"{path}: expected {expected!r}, got {actual!r}")
    return problems


def run_corpus(
    entries: list[CorpusEntry],
    *,
    quick: bool = False,
    only: str | None = None,
    settings: Settings | None = None,
) -> list[EntryResult]:
    selected = [
        e for e in entries if (not quick or e.quick) and (only is None or e.name == only)
    ]
    if only is not None and not selected:
        raise ValueError(f"No corpus entry named {only!r}")

    results = []
    for entry in selected:
        logger.info(f"selftest: {entry.name}")
        start = time.perf_counter()
        try:
            report = run_entry(entry, settings)
            problems = mismatches(report, entry.expect)
            results.append(
                EntryResult(
                    entry.name,
                    not problems,
                    time.perf_counter() - start,
                    report.digest,
                    "; ".join(problems) or None,
                )
            )
        except (HodgeVfiltError, ValueError) as e:
            kind = "budget exceeded" if isinstance(e, BudgetExceeded) else type(e).__name__
            results.append(
                EntryResult(entry.name, False, time.perf_counter() - start, error=f"{kind}: {e}")
            )
    return results


def display_results(results: list[EntryResult], target: Console = console) -> None:
    table = Table(title=f"Self-test ({len(results)} entries)")
    table.add_column("Entry", style="cyan", no_wrap=True)
    table.add_column("Result", justify="center")
    table.add_column("Time", justify="right", style="yellow")
    table.add_column("Digest", style="dim", no_wrap=True)
    table.add_column("Details", style="white")

    for result in results:
        status = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(
            result.name,
            status,
            f"{result.duration:.1f}s",
            (result.digest or "-")[:12],
            result.error or "",
        )
    target.print(table)
    failed = sum(not r.passed for r in results)
    if failed:
        target.print(f"[red]{failed} of {len(results)} entries failed[/red]")
    else:
        target.print(f"[green]all {len(results)} entries passed[/green]")
