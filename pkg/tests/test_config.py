"""Tests for settings, budgets and the logging helpers."""

from __future__ import annotations

import logging

import pytest

from hodge_vfilt.config import DEFAULT_MAX_PAIRS, Budget, Settings
from hodge_vfilt.utils.logging import make_logger, setup_logging, timed


def test_defaults() -> None:
    settings = Settings()
    assert settings.order == "grevlex"
    assert settings.output_format == "json"
    assert settings.deg_bound == 8
    assert settings.tail_deg is None
    assert settings.budget.max_pairs == DEFAULT_MAX_PAIRS


@pytest.mark.parametrize(
    "kwargs,message",
    [
        ({"order": "deglex"}, "order must be one of"),
        ({"output_format": "xml"}, "format must be one of"),
        ({"deg_bound": -1}, "deg_bound must be >= 0"),
        ({"deg_bound": 4, "tail_deg": 3}, "tail_deg"),
    ],
)
def test_settings_validation(kwargs, message) -> None:
    with pytest.raises(ValueError, match=message):
        Settings(**kwargs)


def test_budget_must_be_positive() -> None:
    with pytest.raises(ValueError, match="budget must be positive"):
        Budget(max_pairs=0)
    assert Budget(max_pairs=None).max_pairs is None


def test_override_skips_none_and_builds_budget() -> None:
    settings = Settings().override(order="lex", deg_bound=None, max_pairs=10)
    assert settings.order == "lex"
    assert settings.deg_bound == 8
    assert settings.budget == Budget(max_pairs=10)


def test_from_yaml(tmp_path) -> None:
    path = tmp_path / "settings.yaml"
    path.write_text("order: lex\nformat: text\ndeg_bound: 5\ntail_deg: 7\nbudget: 100\n")
    settings = Settings.from_yaml(path)
    assert settings == Settings("lex", "text", 5, 7, Budget(100))


def test_from_yaml_empty_file(tmp_path) -> None:
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert Settings.from_yaml(path) == Settings()


@pytest.mark.parametrize(
    "content,message",
    [
        ("- a\n- b\n", "must be a YAML mapping"),
        ("colour: red\n", "Unknown settings keys: colour"),
        ("deg_bound: six\n", "'deg_bound' must be an integer"),
        ("budget: true\n", "'budget' must be an integer"),
        ("order: deglex\n", "order must be one of"),
    ],
)
def test_from_yaml_rejects(tmp_path, content, message) -> None:
    path = tmp_path / "settings.yaml"
    path.write_text(content)
    with pytest.raises(ValueError, match=message):
        Settings.from_yaml(path)


def test_setup_logging_rejects_unknown_level() -> None:
    with pytest.raises(ValueError, match="Invalid log level"):
        setup_logging("chatty", make_logger("hodge_vfilt.test"))


def test_timed_records_elapsed_seconds() -> None:
    timings: dict[str, float] = {}
    with timed("step", timings, logging.getLogger("hodge_vfilt.test")):
        pass
    assert "step" in timings
    assert timings["step"] >= 0
