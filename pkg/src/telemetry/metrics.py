"""
Exploration metrics

Counters live on the default prometheus registry. Nothing is exposed over
HTTP; values are read back for run manifests and tests.
"""

from prometheus_client import REGISTRY, Counter, Histogram

STATES_STORED = Counter(
    "exact_bounds_states_stored",
    "States kept in the passed list",
    ["engine"],
)
TRANSITIONS_FIRED = Counter(
    "exact_bounds_transitions",
    "Successor states computed",
    ["engine"],
)
EXPLORATION_SECONDS = Histogram(
    "exact_bounds_exploration_seconds",
    "Wall time of one exploration",
    ["engine"],
    buckets=(0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, 600.0),
)


def record_exploration(engine: str, states: int, transitions: int, seconds: float) -> None:
    STATES_STORED.labels(engine=engine).inc(states)
    TRANSITIONS_FIRED.labels(engine=engine).inc(transitions)
    EXPLORATION_SECONDS.labels(engine=engine).observe(seconds)


def states_stored_total(engine: str) -> float:
    value = REGISTRY.get_sample_value("exact_bounds_states_stored_total", {"engine": engine})
    return value or 0.0
