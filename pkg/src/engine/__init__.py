"""Symbolic exploration engine"""

from src.engine.explorer import (
    BuildOptions,
    Extremum,
    QueryStatus,
    SymbolicState,
    ZoneGraph,
    build_zone_graph,
    initial_state,
    query_bounds,
    query_extremum,
    query_reachable,
    successors,
)
from src.engine.formula import StateFormula, at, parse_formula
from src.engine.intervals import IntervalSet

__all__ = [
    "BuildOptions",
    "Extremum",
    "IntervalSet",
    "QueryStatus",
    "StateFormula",
    "SymbolicState",
    "ZoneGraph",
    "at",
    "build_zone_graph",
    "initial_state",
    "parse_formula",
    "query_bounds",
    "query_extremum",
    "query_reachable",
    "successors",
]
