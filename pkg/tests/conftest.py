import os
from pathlib import Path
from unittest.mock import patch

import pytest

from src.abstraction.events import EventSpec, load_event_spec
from src.bounds.observers import Requirement, load_requirement
from src.rts.generator import build_core_network
from src.rts.model import RtsSpec, load_rts

EXAMPLES = Path(__file__).resolve().parent.parent / "src" / "data" / "examples"


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False, help="Run the synthetic stress tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session", autouse=True)
def quiet_environment():
    """Keep user environment out of the settings under test"""
    with patch.dict(os.environ, {"EXACT_BOUNDS_ENVIRONMENT": "test", "EXACT_BOUNDS_LOG_LEVEL": "WARNING"}):
        yield


@pytest.fixture(scope="session")
def examples_dir() -> Path:
    return EXAMPLES


@pytest.fixture(scope="session")
def rts() -> RtsSpec:
    """The four-task, two-core example system"""
    return load_rts(EXAMPLES / "example1" / "rts.json")


@pytest.fixture(scope="session")
def events1() -> EventSpec:
    return load_event_spec(EXAMPLES / "example1" / "events.json")


@pytest.fixture(scope="session")
def events2() -> EventSpec:
    return load_event_spec(EXAMPLES / "example2" / "events.json")


@pytest.fixture(scope="session")
def events3() -> EventSpec:
    return load_event_spec(EXAMPLES / "example3" / "events.json")


@pytest.fixture(scope="session")
def simple_max() -> Requirement:
    return load_requirement(EXAMPLES / "example1" / "simplemax.req.json")


@pytest.fixture(scope="session")
def network_c1(rts):
    return build_core_network(rts, "c1")


@pytest.fixture(scope="session")
def network_c2(rts):
    return build_core_network(rts, "c2")
