"""Integer-time ground truth for the symbolic engine"""

from src.oracle.digitized import ConcreteState, DigitizedGraph, TraceEvent, digitized_explore
from src.oracle.queries import (
    default_horizon,
    dump_timeline_csv,
    oracle_bound,
    oracle_emissions,
    oracle_intervals,
    oracle_response_times,
    oracle_segment_runs,
)

__all__ = [
    "ConcreteState",
    "DigitizedGraph",
    "TraceEvent",
    "default_horizon",
    "digitized_explore",
    "dump_timeline_csv",
    "oracle_bound",
    "oracle_emissions",
    "oracle_intervals",
    "oracle_response_times",
    "oracle_segment_runs",
]
