"""
Test cases for settings, logging and exploration metrics
"""

import json
import logging

import pytest
import structlog
from pydantic import ValidationError

from src.config.settings import Settings, load_settings
from src.telemetry.logging import configure_logging
from src.telemetry.metrics import record_exploration, states_stored_total


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("EXACT_BOUNDS_STATE_BUDGET", "1000")
    monkeypatch.setenv("EXACT_BOUNDS_TIME_UNIT", "ms")
    monkeypatch.setenv("EXACT_BOUNDS_ENVIRONMENT", "prod")
    configured = Settings(_env_file=None)
    assert configured.state_budget == 1000
    assert configured.time_unit == "ms"
    assert configured.is_production
    assert not Settings(_env_file=None, environment="development").is_production


def test_malformed_environment_falls_back_outside_production(monkeypatch):
    """Test the default budget after a broken override in development"""
    monkeypatch.setenv("EXACT_BOUNDS_STATE_BUDGET", "lots")
    monkeypatch.setenv("EXACT_BOUNDS_ENVIRONMENT", "development")
    fallback = load_settings()
    assert fallback.state_budget == 50_000_000
    assert not fallback.is_production


def test_malformed_environment_fails_in_production(monkeypatch):
    monkeypatch.setenv("EXACT_BOUNDS_STATE_BUDGET", "lots")
    monkeypatch.setenv("EXACT_BOUNDS_ENVIRONMENT", "production")
    with pytest.raises(ValidationError):
        load_settings()


def test_defaults(monkeypatch):
    monkeypatch.delenv("EXACT_BOUNDS_STATE_BUDGET", raising=False)
    configured = Settings(_env_file=None)
    assert configured.jobs == 1
    assert configured.subsumption
    assert configured.oracle_horizon is None


def test_json_logging(capsys):
    configure_logging(level="INFO", json_output=True)
    structlog.get_logger("test").info("bound_computed", bound=18)
    line = capsys.readouterr().err.strip().splitlines()[-1]
    record = json.loads(line)
    assert record["event"] == "bound_computed"
    assert record["bound"] == 18
    assert record["level"] == "info"
    configure_logging(level="WARNING", json_output=False)
    assert logging.getLogger().level == logging.WARNING


def test_exploration_counters():
    before = states_stored_total("test")
    record_exploration("test", 5, 7, 0.01)
    assert states_stored_total("test") == before + 5
