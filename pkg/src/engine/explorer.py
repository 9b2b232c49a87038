"""
Symbolic zone-graph exploration and the reachability, sup/inf and bounds queries
"""

import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field

from src.automata.discrete import DiscreteState
from src.automata.model import Network
from src.config.settings import settings
from src.engine.compiled import CompiledFormula, CompiledNetwork
from src.engine.formula import StateFormula
from src.engine.intervals import IntervalSet
from src.engine.transitions import Candidate, candidates, enabled_pieces
from src.errors import ModelError, ResourceError, UsageError
from src.telemetry.metrics import record_exploration
from src.zones.dbm import UNBOUNDED, Dbm

logger = structlog.get_logger(__name__)


class BuildOptions(BaseModel):
    """Per-build knobs of the explorer"""

    model_config = ConfigDict(frozen=True)

    extrapolate: bool = Field(False, description="Max-constant extrapolation (else the model must bound clocks)")
    query_clocks: list[str] = Field(default_factory=list, description="Clocks exempt from extrapolation")
    query_ceiling: int | None = Field(None, ge=0, description="Finite bound for query clocks; larger values read as unbounded")
    subsumption: bool = Field(default_factory=lambda: settings.subsumption)
    state_budget: int = Field(default_factory=lambda: settings.state_budget, ge=1)
    observed: list[StateFormula] = Field(default_factory=list, description="Formulas queried later")


@dataclass(frozen=True)
class SymbolicState:
    locations: tuple[int, ...]
    discrete: DiscreteState
    zone: Dbm


@dataclass
class ExplorationStats:
    stored: int = 0
    subsumed: int = 0
    transitions: int = 0
    waiting_peak: int = 0
    seconds: float = 0.0

    def as_dict(self) -> dict[str, float]:
        return {
            "stored": self.stored,
            "subsumed": self.subsumed,
            "transitions": self.transitions,
            "waiting_peak": self.waiting_peak,
            "seconds": round(self.seconds, 6),
        }


@dataclass
class ZoneGraph:
    net: CompiledNetwork
    options: BuildOptions
    states: list[SymbolicState] = field(default_factory=list)
    parents: list[tuple[int, Candidate] | None] = field(default_factory=list)
    stats: ExplorationStats = field(default_factory=ExplorationStats)
    stopped: bool = False

    def satisfying(self, formula: StateFormula) -> list[tuple[int, Dbm]]:
        """Indices of states meeting the formula, with the constrained zone"""
        compiled = self.net.compile_formula(formula)
        found = []
        for index, state in enumerate(self.states):
            zone = _restrict(state, compiled)
            if zone is not None:
                found.append((index, zone))
        return found

    def path_to(self, index: int) -> list[int]:
        path = [index]
        while (parent := self.parents[path[-1]]) is not None:
            path.append(parent[0])
        return path[::-1]

    def describe(self, index: int) -> str:
        state = self.states[index]
        clocks = []
        for c, name in enumerate(self.net.clock_names, start=1):
            low, high = state.zone.clock_interval(c)
            left = "(" if low.strict else "["
            right = ")" if high.strict else "]"
            upper = "inf" if high.infinite else str(high.value)
            clocks.append(f"{name} in {left}{low.value},{upper}{right}")
        data = self.net.layout.describe(state.discrete)
        return f"{' '.join(self.net.location_names(state.locations))} {data} | {', '.join(clocks)}"

    def trace(self, index: int) -> list[str]:
        """One line per transition along the path to a stored state"""
        path = self.path_to(index)
        lines = [f"init: {self.describe(path[0])}"]
        for step in path[1:]:
            parent = self.parents[step]
            assert parent is not None
            lines.append(f"{parent[1].label()} => {self.describe(step)}")
        return lines

    def trace_to(self, formula: StateFormula) -> list[str] | None:
        hits = self.satisfying(formula)
        return self.trace(hits[0][0]) if hits else None


def _restrict(state: SymbolicState, formula: CompiledFormula) -> Dbm | None:
    if not formula.holds_discrete(state.locations, state.discrete):
        return None
    return state.zone.constrain_all(formula.clocks)


def _compiled(n: Network | CompiledNetwork) -> CompiledNetwork:
    return n if isinstance(n, CompiledNetwork) else CompiledNetwork(n)


def _max_constants(net: CompiledNetwork, options: BuildOptions) -> np.ndarray:
    for formula in options.observed:
        net.observe_constants(formula)
    ceiling = np.array(net.max_constants, copy=True)
    for name in options.query_clocks:
        ceiling[net.clock(name)] = UNBOUNDED if options.query_ceiling is None else options.query_ceiling
    ceiling[0] = 0
    return ceiling


def _close(net: CompiledNetwork, locations: tuple[int, ...], zone: Dbm) -> Dbm | None:
    invariant = net.invariant(locations)
    zone = zone.constrain_all(invariant)
    if zone is None or net.committed(locations):
        return zone
    return zone.up().constrain_all(invariant)


def initial_state(n: Network | CompiledNetwork) -> SymbolicState:
    net = _compiled(n)
    locations = net.initial_locations
    zone = _close(net, locations, Dbm.zero(net.clocks))
    if zone is None:
        raise ModelError("initial state violates the location invariants")
    return SymbolicState(locations, net.layout.initial, zone)


def successors(
    s: SymbolicState,
    n: Network | CompiledNetwork,
    max_constants: np.ndarray | None = None,
) -> list[tuple[SymbolicState, Candidate]]:
    """Action successors of s, each paired with the transition that produced it"""
    net = _compiled(n)
    offered = candidates(net, s.locations, s.discrete)
    result = []
    for candidate in offered:
        higher = list(
            dict.fromkeys(c.enabling for c in offered if c.priority > candidate.priority)
        )
        pieces = enabled_pieces(s.zone, candidate, higher)
        if not pieces:
            continue
        discrete = net.layout.apply(s.discrete, candidate.effects())
        targets = candidate.targets(s.locations)
        resets = candidate.resets()
        for piece in pieces:
            zone = piece
            for clock in resets:
                zone = zone.reset(clock)
            closed = _close(net, targets, zone)
            if closed is None:
                continue
            if max_constants is not None:
                closed = closed.extrapolate(max_constants)
            result.append((SymbolicState(targets, discrete, closed), candidate))
    return result


def build_zone_graph(
    n: Network | CompiledNetwork,
    stop: StateFormula | None = None,
    options: BuildOptions | None = None,
) -> ZoneGraph:
    """Breadth-first exploration with a passed list and zone subsumption"""
    net = _compiled(n)
    options = options or BuildOptions()
    ceiling = _max_constants(net, options) if options.extrapolate else None
    stop_formula = net.compile_formula(stop) if stop is not None else None
    graph = ZoneGraph(net=net, options=options)
    started = time.perf_counter()

    passed: dict[tuple[tuple[int, ...], DiscreteState], list[Dbm]] = {}
    waiting: deque[int] = deque()

    def store(state: SymbolicState, parent: tuple[int, Candidate] | None) -> bool:
        bucket = passed.setdefault((state.locations, state.discrete), [])
        if options.subsumption:
            covered = any(z.includes(state.zone) for z in bucket)
        else:
            covered = any(z == state.zone for z in bucket)
        if covered:
            graph.stats.subsumed += 1
            return False
        if len(graph.states) >= options.state_budget:
            raise ResourceError(
                f"state budget of {options.state_budget} stored states exceeded",
                budget=options.state_budget,
            )
        bucket.append(state.zone)
        graph.states.append(state)
        graph.parents.append(parent)
        waiting.append(len(graph.states) - 1)
        graph.stats.waiting_peak = max(graph.stats.waiting_peak, len(waiting))
        if stop_formula is not None and _restrict(state, stop_formula) is not None:
            graph.stopped = True
        return True

    first = initial_state(net)
    if ceiling is not None:
        first = SymbolicState(first.locations, first.discrete, first.zone.extrapolate(ceiling))
    store(first, None)

    while waiting and not graph.stopped:
        index = waiting.popleft()
        try:
            produced = successors(graph.states[index], net, ceiling)
        except ModelError as e:
            e.trace = graph.trace(index)
            raise
        graph.stats.transitions += len(produced)
        for state, candidate in produced:
            store(state, (index, candidate))
            if graph.stopped:
                break

    graph.stats.stored = len(graph.states)
    graph.stats.seconds = time.perf_counter() - started
    record_exploration("symbolic", graph.stats.stored, graph.stats.transitions, graph.stats.seconds)
    logger.debug("exploration_finished", **graph.stats.as_dict(), stopped=graph.stopped)
    return graph


class QueryStatus(str, Enum):
    OK = "ok"
    UNSATISFIED = "unsatisfied"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Extremum:
    status: QueryStatus
    value: int | None = None
    strict: bool = False

    @property
    def ok(self) -> bool:
        return self.status == QueryStatus.OK

    def __str__(self) -> str:
        return str(self.value) if self.ok else self.status.value


UNSATISFIED = Extremum(QueryStatus.UNSATISFIED)
UNBOUNDED_RESULT = Extremum(QueryStatus.UNBOUNDED)


def _query_clock(g: ZoneGraph, clock: str) -> int:
    index = g.net.clock(clock)
    if g.options.extrapolate and clock not in g.options.query_clocks:
        raise UsageError(f"clock {clock} was extrapolated during the build; declare it as a query clock")
    return index


def _beyond(g: ZoneGraph, value: float) -> bool:
    if value == float("inf"):
        return True
    return g.options.query_ceiling is not None and value > g.options.query_ceiling


def query_extremum(g: ZoneGraph, f: StateFormula, x: str, mode: str = "sup") -> Extremum:
    """Largest upper (sup) or smallest lower (inf) projection of x where f holds"""
    if mode not in ("sup", "inf"):
        raise UsageError(f"unknown extremum mode {mode}")
    clock = _query_clock(g, x)
    best: Extremum | None = None
    for _, zone in g.satisfying(f):
        low, high = zone.clock_interval(clock)
        if mode == "sup":
            if _beyond(g, high.value):
                return UNBOUNDED_RESULT
            if best is None or high.value > best.value or (high.value == best.value and not high.strict):
                best = Extremum(QueryStatus.OK, int(high.value), high.strict)
        else:
            if best is None or low.value < best.value or (low.value == best.value and not low.strict):
                best = Extremum(QueryStatus.OK, int(low.value), low.strict)
    return best or UNSATISFIED


def query_bounds(g: ZoneGraph, f: StateFormula, x: str) -> IntervalSet:
    """Exact union of the values x takes where f holds"""
    clock = _query_clock(g, x)
    projections = []
    for _, zone in g.satisfying(f):
        low, high = zone.clock_interval(clock)
        if _beyond(g, high.value):
            raise UsageError(f"clock {x} is unbounded where the formula holds")
        projections.append((low, high))
    return IntervalSet.from_projections(projections)


def query_reachable(g: ZoneGraph, f: StateFormula) -> bool:
    compiled = g.net.compile_formula(f)
    return any(_restrict(state, compiled) is not None for state in g.states)
