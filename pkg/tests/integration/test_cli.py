"""
Test cases for the command line, run in-process with click's CliRunner
"""

import csv
import json

import pytest
from click.testing import CliRunner

from src.automata.model import Network
from src.cli.main import app
from src.cli.models.manifest import RunManifest
from src.config.settings import settings


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def ex1(examples_dir):
    base = examples_dir / "example1"
    return [str(base / "rts.json"), str(base / "events.json"), str(base / "simplemax.req.json")]


def _record(output: str) -> dict:
    """Last JSON line printed by a command"""
    lines = [line for line in output.splitlines() if line.startswith("{")]
    return json.loads(lines[-1])


def test_version(runner):
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert "exact-bounds" in result.output


def test_validate_accepts_the_examples(runner, ex1):
    result = runner.invoke(app, ["validate", *ex1])
    assert result.exit_code == 0, result.output
    assert "valid" in result.output


def test_validate_reports_pointers(runner, tmp_path, examples_dir):
    """Test exit code 1 and the JSON pointer of a bad segment"""
    data = json.loads((examples_dir / "example1" / "rts.json").read_text())
    data["tasks"][0]["segments"][0]["bcet"] = 9
    bad = tmp_path / "rts.json"
    bad.write_text(json.dumps(data))
    result = runner.invoke(app, ["validate", str(bad)])
    assert result.exit_code == 1
    assert "/tasks/0/segments/0" in result.output
    assert "invalid" in result.output


def test_missing_input_file(runner, tmp_path):
    result = runner.invoke(app, ["validate", str(tmp_path / "absent.json")])
    assert result.exit_code == 1
    assert "not found" in result.output


def test_schema_violation_is_an_input_error(runner, tmp_path):
    bad = tmp_path / "rts.json"
    bad.write_text(json.dumps({"cores": ["c1"], "tasks": [{"name": "t1"}]}))
    result = runner.invoke(app, ["validate", str(bad)])
    assert result.exit_code == 1
    assert "schema violation" in result.output


def test_generate_and_schema(runner, tmp_path, ex1):
    result = runner.invoke(app, ["generate", ex1[0], "-o", str(tmp_path / "nets")])
    assert result.exit_code == 0, result.output
    for core in ("c1", "c2"):
        network = Network.model_validate_json((tmp_path / "nets" / f"N_{core}.ta.json").read_text())
        assert network.automata[0].id == f"H_{core}"

    target = tmp_path / "schema.json"
    result = runner.invoke(app, ["schema", "-o", str(target)])
    assert result.exit_code == 0
    assert "automata" in json.loads(target.read_text())["properties"]


def test_schedulability(runner, ex1):
    result = runner.invoke(app, ["schedulability", ex1[0], "--core", "c2"])
    assert result.exit_code == 0, result.output
    assert "18" in result.output
    assert "40" in result.output

    result = runner.invoke(app, ["schedulability", ex1[0], "--core", "c9"])
    assert result.exit_code == 1
    assert "hosts no task" in result.output


def test_intervals_file(runner, tmp_path, ex1):
    target = tmp_path / "intervals.json"
    result = runner.invoke(app, ["intervals", ex1[0], ex1[1], "-o", str(target), "--verbose"])
    assert result.exit_code == 0, result.output
    payload = json.loads(target.read_text())
    assert set(payload) == {"c1", "c2"}
    periods = {e["period"]: e["intervals"] for e in payload["c2"]["entries"]}
    assert periods == {1: [[2, 4]], 2: [[22, 26], [32, 38]]}
    assert "symbolic states" in result.output


def test_bound_exact_and_coarse(runner, tmp_path, ex1):
    """Test the printed records 18 and 23 and the run manifest"""
    manifest = tmp_path / "manifest.json"
    result = runner.invoke(app, ["bound", *ex1, "--manifest", str(manifest)])
    assert result.exit_code == 0, result.output
    record = _record(result.output)
    assert record["status"] == "ok"
    assert record["bound"] == 18

    saved = RunManifest.load(manifest)
    assert saved.command == "bound"
    assert set(saved.inputs) == {"rts.json", "events.json", "simplemax.req.json"}
    assert [s.name for s in saved.stages] == ["networks", "intervals", "abstraction", "bound"]
    assert saved.disclaimer is None

    result = runner.invoke(app, ["bound", *ex1, "--coarse"])
    assert _record(result.output)["bound"] == 23


def test_bound_with_debug_logging(runner, ex1):
    """Test the full pipeline with every debug record rendered"""
    result = runner.invoke(app, ["--log-level", "DEBUG", "--no-log-json", "bound", *ex1])
    assert result.exit_code == 0, result.output
    assert _record(result.output)["bound"] == 18
    assert "period_grouped" in result.output
    assert "first_event=e1" in result.output


def test_bound_from_saved_networks(runner, tmp_path, ex1):
    nets = tmp_path / "nets"
    runner.invoke(app, ["generate", ex1[0], "-o", str(nets)])
    result = runner.invoke(app, ["bound", *ex1, "--xta", str(nets)])
    assert result.exit_code == 0, result.output
    assert _record(result.output)["bound"] == 18


def test_abstract_needs_force_for_eventless_jobs(runner, tmp_path, examples_dir):
    base = examples_dir / "example3_variant"
    args = ["abstract", str(base / "rts.json"), str(base / "events.json"), "-o", str(tmp_path / "out")]
    result = runner.invoke(app, args)
    assert result.exit_code == 1

    result = runner.invoke(app, [*args, "--force"])
    assert result.exit_code == 0, result.output
    out = tmp_path / "out"
    assert (out / "A_c1.ta.json").is_file()
    assert (out / "A_c2.ta.json").is_file()
    assert (out / "intervals.json").is_file()
    assert "forced mode" in RunManifest.load(out / "manifest.json").disclaimer


def test_abstract_output_is_stable(runner, tmp_path, examples_dir):
    base = examples_dir / "example1"
    for name in ("a", "b"):
        runner.invoke(app, ["abstract", str(base / "rts.json"), str(base / "events.json"), "-o", str(tmp_path / name)])
    for artifact in ("A_c1.ta.json", "A_c2.ta.json", "intervals.json"):
        assert (tmp_path / "a" / artifact).read_bytes() == (tmp_path / "b" / artifact).read_bytes()


def test_oracle_command(runner, tmp_path, ex1):
    timeline = tmp_path / "timeline.csv"
    result = runner.invoke(app, ["oracle", *ex1, "--horizon", "240", "--timeline", str(timeline)])
    assert result.exit_code == 0, result.output
    record = _record(result.output)
    assert record["status"] == "ok"
    assert record["bound"] == 18
    rows = list(csv.DictReader(timeline.open(encoding="utf-8")))
    assert {row["event"] for row in rows} == {"e1", "e2"}


def test_state_budget_exit_code(runner, monkeypatch, ex1):
    monkeypatch.setattr(settings, "state_budget", settings.state_budget)
    result = runner.invoke(app, ["--state-budget", "10", "bound", *ex1])
    assert result.exit_code == 2
    assert "budget" in result.output
