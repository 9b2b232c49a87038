"""Observers and latency bounds over abstract networks"""

from src.bounds.compute import BoundResult, compute_bound
from src.bounds.observers import Requirement, RequirementKind, build_observer, validate_requirement

__all__ = [
    "BoundResult",
    "Requirement",
    "RequirementKind",
    "build_observer",
    "compute_bound",
    "validate_requirement",
]
