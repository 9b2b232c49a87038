"""
Integer-time exploration of a network

Delays advance every clock by exactly one time unit; action transitions are
the ones the symbolic explorer offers, evaluated at the current integer
valuation. For closed constraints the integer points reached this way are
exactly the integer points of the symbolic zones.
"""

import time
from collections import deque
from collections.abc import Callable, Hashable
from dataclasses import dataclass, field

import structlog

from src.automata.discrete import DiscreteState
from src.automata.model import Network
from src.config.settings import settings
from src.engine.compiled import CompiledNetwork
from src.engine.transitions import Candidate, candidates
from src.errors import ModelClassError, ModelError, ResourceError
from src.telemetry.metrics import record_exploration
from src.zones.dbm import Atom

logger = structlog.get_logger(__name__)

# monitor hook: (monitor state, emitted event, absolute time) -> [(next state, completed latency)]
MonitorStep = Callable[[Hashable, str, int], list[tuple[Hashable, int | None]]]


@dataclass(frozen=True)
class ConcreteState:
    locations: tuple[int, ...]
    discrete: DiscreteState
    clocks: tuple[int, ...]
    time: int
    monitor: Hashable = None


@dataclass(frozen=True)
class TraceEvent:
    event: str
    time: int
    automaton: str


@dataclass
class DigitizedGraph:
    net: CompiledNetwork
    horizon: int
    states: list[ConcreteState] = field(default_factory=list)
    # (source index, fired transition, target index)
    transitions: list[tuple[int, Candidate, int]] = field(default_factory=list)
    latencies: list[int] = field(default_factory=list)

    def emissions(self) -> set[TraceEvent]:
        found = set()
        for source, candidate, _ in self.transitions:
            emitter = candidate.edges[0]
            if candidate.channel is not None and emitter.emit:
                found.add(
                    TraceEvent(
                        event=self.net.channel_ids[candidate.channel],
                        time=self.states[source].time,
                        automaton=self.net.automata[emitter.automaton].id,
                    )
                )
        return found

    def value(self, state: ConcreteState, clock: str) -> int:
        return state.clocks[self.net.clock(clock) - 1]

    def location(self, state: ConcreteState, automaton: str) -> str:
        a_index = self.net.automaton_index[automaton]
        return self.net.automata[a_index].locations[state.locations[a_index]]


def _holds(atoms: tuple[Atom, ...] | list[Atom], values: tuple[int, ...]) -> bool:
    return all(atom.holds(values) for atom in atoms)


def _fires(candidate: Candidate, values: tuple[int, ...], higher: list[tuple[Atom, ...]]) -> bool:
    if not _holds(candidate.guard, values):
        return False
    if any(_holds(region, values) for region in candidate.excluded):
        return False
    return not any(_holds(region, values) for region in higher)


def digitized_explore(
    n: Network | CompiledNetwork,
    horizon: int,
    monitor: tuple[Hashable, MonitorStep] | None = None,
    state_budget: int | None = None,
) -> DigitizedGraph:
    """Breadth-first search over unit delays and action transitions up to ``horizon``"""
    net = n if isinstance(n, CompiledNetwork) else CompiledNetwork(n)
    if not net.closed:
        raise ModelClassError("the digitized semantics needs closed guards and invariants")
    if horizon < 1:
        raise ModelClassError(f"horizon must be at least 1, got {horizon}")
    budget = state_budget or settings.state_budget
    # values above the largest constant are indistinguishable
    caps = tuple(int(c) + 1 for c in net.max_constants[1:])
    graph = DigitizedGraph(net=net, horizon=horizon)
    index: dict[ConcreteState, int] = {}
    waiting: deque[int] = deque()
    started = time.perf_counter()

    def store(state: ConcreteState) -> int:
        known = index.get(state)
        if known is not None:
            return known
        if len(graph.states) >= budget:
            raise ResourceError(f"state budget of {budget} digitized states exceeded", budget=budget)
        index[state] = len(graph.states)
        graph.states.append(state)
        waiting.append(index[state])
        return index[state]

    zero = tuple(0 for _ in caps)
    if not _holds(net.invariant(net.initial_locations), zero):
        raise ModelError("initial state violates the location invariants")
    initial_monitor = monitor[0] if monitor else None
    store(ConcreteState(net.initial_locations, net.layout.initial, zero, 0, initial_monitor))

    while waiting:
        source = waiting.popleft()
        state = graph.states[source]
        offered = candidates(net, state.locations, state.discrete)
        for candidate in offered:
            higher = [c.enabling for c in offered if c.priority > candidate.priority]
            if not _fires(candidate, state.clocks, higher):
                continue
            targets = candidate.targets(state.locations)
            reset = set(candidate.resets())
            values = tuple(0 if i + 1 in reset else v for i, v in enumerate(state.clocks))
            if not _holds(net.invariant(targets), values):
                continue
            try:
                discrete = net.layout.apply(state.discrete, candidate.effects())
            except ModelError as e:
                e.trace = [candidate.label()]
                raise
            followers: list[tuple[Hashable, int | None]] = [(state.monitor, None)]
            emitter = candidate.edges[0]
            if monitor and candidate.channel is not None and emitter.emit:
                followers = monitor[1](state.monitor, net.channel_ids[candidate.channel], state.time)
            for watched, latency in followers:
                if latency is not None:
                    graph.latencies.append(latency)
                target = store(ConcreteState(targets, discrete, values, state.time, watched))
                graph.transitions.append((source, candidate, target))

        if state.time < horizon and not net.committed(state.locations):
            later = tuple(min(v + 1, cap) for v, cap in zip(state.clocks, caps, strict=True))
            if _holds(net.invariant(state.locations), later):
                store(ConcreteState(state.locations, state.discrete, later, state.time + 1, state.monitor))

    seconds = time.perf_counter() - started
    record_exploration("digitized", len(graph.states), len(graph.transitions), seconds)
    logger.debug("digitized_exploration_finished", states=len(graph.states), horizon=horizon, seconds=round(seconds, 3))
    return graph
