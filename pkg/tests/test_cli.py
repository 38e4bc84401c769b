"""Tests for the vf command line: output formats, exit codes and options."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from hodge_vfilt.cli import EXIT_BUDGET, EXIT_FAILED, EXIT_USAGE, main
from hodge_vfilt.cli_handlers.report import Report
from hodge_vfilt.errors import BudgetExceeded


def _invoke(*args: str):
    return CliRunner().invoke(main, list(args))


def _json(result) -> dict:
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def test_bfun_json_report() -> None:
    data = _json(_invoke("bfun", "--vars", "x", "--f", "x"))
    assert data["schema"] == 1
    assert data["command"] == "bfun"
    assert data["arguments"] == {"vars": ["x"], "f": "x", "certify": True}
    assert data["results"]["bfunction"]["factored"] == "(s+1)"
    assert data["results"]["minimal_exponent"] == "oo"
    assert data["results"]["lct"] == "1"
    assert data["certificates"]["functional_equation"]["verified"] is True
    assert data["passed"] is None
    assert "bfunction" in data["timings"]


def test_text_format_renders_a_table() -> None:
    result = _invoke("--format", "text", "bfun", "--vars", "x", "--f", "x", "--no-certify")
    assert result.exit_code == 0, result.output
    assert "(s+1)" in result.output
    assert "bfunction.factored" in result.output


def test_out_writes_the_report(tmp_path: Path) -> None:
    target = tmp_path / "report.json"
    result = _invoke("--out", str(target), "bfun", "--vars", "x", "--f", "x")
    assert result.exit_code == 0, result.output
    assert json.loads(target.read_text())["results"]["bfunction"]["roots"] == ["-1"]


def test_config_file_sets_the_format(tmp_path: Path) -> None:
    config = tmp_path / "vf.yaml"
    config.write_text("format: text\n")
    result = _invoke("--config", str(config), "bfun", "--vars", "x", "--f", "x")
    assert result.exit_code == 0, result.output
    assert not result.output.lstrip().startswith("{")


def test_bad_config_is_a_usage_error(tmp_path: Path) -> None:
    config = tmp_path / "vf.yaml"
    config.write_text("colour: red\n")
    result = _invoke("--config", str(config), "bfun", "--vars", "x", "--f", "x")
    assert result.exit_code == EXIT_USAGE
    assert "Unknown settings keys" in result.output


@pytest.mark.parametrize(
    "args,message",
    [
        (["bfun", "--vars", "x,t", "--f", "x"], "reserved"),
        (["bfun", "--vars", "x", "--f", "x + z"], "unknown variable"),
        (["bfun", "--vars", "x", "--f", "x + 0.5"], "p/q"),
        (["vmember", "--vars", "x", "--f", "x", "--element", "1", "--alpha", "1.5"], "--alpha"),
        (["--log-level", "chatty", "bfun", "--vars", "x", "--f", "x"], "Invalid log level"),
        (["verify", "--vars", "x", "--f", "x", "--k", "0", "--alpha", "2"], "--claimed"),
    ],
)
def test_usage_errors_exit_2(args, message) -> None:
    result = _invoke(*args)
    assert result.exit_code == EXIT_USAGE
    assert message in result.output


def test_constant_f_fails() -> None:
    result = _invoke("bfun", "--vars", "x", "--f", "3")
    assert result.exit_code == EXIT_FAILED
    assert "constant" in result.output


def test_vmember_reports_membership() -> None:
    data = _json(
        _invoke("vmember", "--vars", "x", "--f", "x", "--element", "1", "--alpha", "2")
    )
    assert data["results"]["in_v"] is False
    assert data["results"]["verdict"] == "not in V^alpha"
    assert data["results"]["bfunction"] == "(s+1)"


def test_verify_exit_codes() -> None:
    base = ["verify", "--vars", "x", "--f", "x", "--k", "0", "--alpha", "2", "--deg-bound", "2"]
    verified = _invoke(*base, "--claimed", "x")
    assert verified.exit_code == 0, verified.output
    assert json.loads(verified.output)["results"]["verdict"] == "verified-in-window"

    refuted = _invoke(*base, "--claimed", "1")
    assert refuted.exit_code == EXIT_FAILED
    assert json.loads(refuted.output)["results"]["verdict"] == "refuted"


def test_verify_reads_a_claim_file(tmp_path: Path) -> None:
    claim = tmp_path / "claim.txt"
    claim.write_text("# the maximal ideal of the smooth point\nx\n")
    result = _invoke(
        "verify", "--vars", "x", "--f", "x", "--k", "0", "--alpha", "2",
        "--deg-bound", "2", "--verify", str(claim),
    )
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)["results"]["claimed"] == ["x"]


def test_budget_overrun_exits_3(monkeypatch: pytest.MonkeyPatch) -> None:
    def exhausted(session, **kwargs):
        raise BudgetExceeded("Buchberger exceeded 1 S-pairs", pairs=2)

    monkeypatch.setattr("hodge_vfilt.cli_handlers.commands.run_bfun", exhausted)
    result = _invoke("--budget", "1", "bfun", "--vars", "x", "--f", "x")
    assert result.exit_code == EXIT_BUDGET
    assert "budget exceeded" in result.output


def test_family_limit_of_a_pencil() -> None:
    data = _json(_invoke("family-limit", "--vars", "x,y", "--gens", "beta*x - y", "--points", "1"))
    assert data["results"]["fibers"]["oo"] == ["x"]
    assert data["results"]["fibers"]["1"] == ["x - y"]
    assert data["certificates"]["bad_factors"] == ["beta"]


def test_limit_check_for_smooth_divisor() -> None:
    result = _invoke(
        "limit-check", "--vars", "x", "--f", "x", "--k", "0", "--alpha", "2", "--deg-bound", "2"
    )
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)["passed"] is True


def test_strictness_command_passes_for_smooth_divisor() -> None:
    data = _json(_invoke("strictness", "--vars", "x", "--f", "x", "--k", "1", "--alpha", "1"))
    assert data["passed"] is True
    assert data["results"]["injective"] is True


@pytest.mark.slow
def test_ordinary_quadric_cone_claims() -> None:
    data = _json(_invoke("ordinary", "-m", "2", "-n", "3"))
    assert data["results"]["f"] == "x^2 + y^2 + z^2"
    assert [c["verdict"] for c in data["results"]["claims"]] == ["verified-in-window"] * 2


def test_family_limit_infers_the_variables() -> None:
    data = _json(
        _invoke("family-limit", "--gens", "x^3; x^2*y^2; x*y^3; y^4 - (2*beta+1)*x^2*y")
    )
    assert data["arguments"]["vars"] == ["x", "y"]
    assert data["results"]["fibers"]["oo"] == ["y^5", "x*y^3", "x^3", "x^2*y"]
    assert data["certificates"]["fibers"]["oo"]["observed"] == 9


def test_family_limit_without_variables_is_a_usage_error() -> None:
    result = _invoke("family-limit", "--gens", "beta - 1")
    assert result.exit_code == EXIT_USAGE
    assert "no variables" in result.output


@pytest.mark.parametrize("command", ["thm12-check", "limit-check"])
def test_limit_check_names(command) -> None:
    data = _json(
        _invoke(command, "--vars", "x", "--f", "x", "--k", "0", "--alpha", "1", "--deg-bound", "2")
    )
    assert data["command"] == "limit-check"
    assert data["passed"] is True
    assert data["results"]["limit"] == ["1"]


def test_identical_runs_share_a_digest() -> None:
    argv = ["family-limit", "--gens", "x^3; x^2*y^2; x*y^3; y^4 - (2*beta+1)*x^2*y"]
    digests = []
    for _ in range(2):
        data = _json(_invoke(*argv))
        fields = ("command", "arguments", "results", "certificates", "complete", "passed")
        digests.append(Report(**{name: data[name] for name in fields}).digest)
    assert digests[0] == digests[1]
