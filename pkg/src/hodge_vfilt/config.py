"""Configuration dataclasses for hodge_vfilt.

This module provides:
- Budget: resource caps handed down to every Gröbner computation
- Settings: session-wide defaults (term order, output format, window sizes)

Settings can be loaded from a YAML mapping; CLI flags override file values.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import yaml

DEFAULT_DEG_BOUND = 8
DEFAULT_MAX_PAIRS = 50_000
DEFAULT_ORDER = "grevlex"
DEFAULT_FORMAT = "json"

ORDERS = ("grevlex", "lex")
FORMATS = ("json", "text")

_SETTINGS_KEYS = {"order", "format", "deg_bound", "tail_deg", "budget"}


@dataclass(frozen=True)
class Budget:
    """Resource caps for one computation.

    ``max_pairs`` bounds the number of S-pairs a single Buchberger run may
    reduce; ``None`` removes the cap.
    """

    max_pairs: int | None = DEFAULT_MAX_PAIRS

    def __post_init__(self) -> None:
        if self.max_pairs is not None and self.max_pairs <= 0:
            raise ValueError(f"budget must be positive, got {self.max_pairs}")


UNLIMITED = Budget(max_pairs=None)


@dataclass(frozen=True)
class Settings:
    """Session defaults shared by the CLI subcommands."""

    order: str = DEFAULT_ORDER
    output_format: str = DEFAULT_FORMAT
    deg_bound: int = DEFAULT_DEG_BOUND
    tail_deg: int | None = None
    budget: Budget = field(default_factory=Budget)

    def __post_init__(self) -> None:
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}, got {self.order!r}")
        if self.output_format not in FORMATS:
            raise ValueError(
                f"format must be one of {FORMATS}, got {self.output_format!r}"
            )
        if self.deg_bound < 0:
            raise ValueError(f"deg_bound must be >= 0, got {self.deg_bound}")
        if self.tail_deg is not None and self.tail_deg < self.deg_bound:
            raise ValueError(
                f"tail_deg ({self.tail_deg}) must be >= deg_bound ({self.deg_bound})"
            )

    def override(self, **changes: Any) -> Settings:
        """Return a copy with every non-None keyword applied."""
        applied = {key: value for key, value in changes.items() if value is not None}
        if "max_pairs" in applied:
            applied["budget"] = Budget(max_pairs=applied.pop("max_pairs"))
        return replace(self, **applied)

    @classmethod
    def from_yaml(cls, path: Path) -> Settings:
        """Load and validate a settings YAML file."""
        with open(path) as f:
            raw = yaml.safe_load(f)

        if raw is None:
            return cls()
        if not isinstance(raw, dict):
            raise ValueError(f"Settings file must be a YAML mapping, got {type(raw)}")

        unknown = set(raw) - _SETTINGS_KEYS
        if unknown:
            raise ValueError(f"Unknown settings keys: {', '.join(sorted(unknown))}")

        for key in ("deg_bound", "tail_deg", "budget"):
            value = raw.get(key)
            if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
                raise ValueError(f"'{key}' must be an integer, got {value!r}")

        return cls(
            order=raw.get("order", DEFAULT_ORDER),
            output_format=raw.get("format", DEFAULT_FORMAT),
            deg_bound=raw.get("deg_bound", DEFAULT_DEG_BOUND),
            tail_deg=raw.get("tail_deg"),
            budget=Budget(max_pairs=raw.get("budget", DEFAULT_MAX_PAIRS)),
        )
