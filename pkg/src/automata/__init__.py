"""Timed automata networks"""

from src.automata.model import (
    Channel,
    ChannelKind,
    ClockConstraint,
    Edge,
    Location,
    Network,
    QueueVariable,
    ScalarVariable,
    Sync,
    TimedAutomaton,
)
from src.automata.network import compose, from_json, to_json, validate_network

__all__ = [
    "Channel",
    "ChannelKind",
    "ClockConstraint",
    "Edge",
    "Location",
    "Network",
    "QueueVariable",
    "ScalarVariable",
    "Sync",
    "TimedAutomaton",
    "compose",
    "from_json",
    "to_json",
    "validate_network",
]
