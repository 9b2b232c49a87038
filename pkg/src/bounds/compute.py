"""
Bound computation over an abstract network composed with an observer
"""

import math
import time

import structlog
from pydantic import BaseModel, Field

from src.automata.model import Channel, ChannelKind, Network
from src.automata.network import compose
from src.bounds.observers import OBSERVER_CLOCK, OBSERVER_ID, RECV, Requirement, build_observer, validate_requirement
from src.config.settings import settings
from src.engine import BuildOptions, QueryStatus, build_zone_graph, query_extremum
from src.engine.formula import at
from src.errors import InputError, errors_only

logger = structlog.get_logger(__name__)

UNSATISFIED_HINT = (
    "the chain never completes; check that the requirement asks for a bound that exists"
)
UNBOUNDED_HINT = (
    "the latency grows past every hyperperiod cycle; the bound does not exist for this requirement"
)


class BoundResult(BaseModel):
    requirement: str
    status: QueryStatus
    bound: int | None = None
    unit: str = Field(default_factory=lambda: settings.time_unit)
    states_explored: int = 0
    wall_time: float = 0.0
    hint: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == QueryStatus.OK

    def record(self) -> str:
        """Single-line JSON record"""
        return self.model_dump_json(exclude_none=True)


def emitted_events(n: Network) -> set[str]:
    return {
        edge.sync.channel
        for automaton in n.automata
        for edge in automaton.edges
        if edge.sync is not None and edge.sync.direction == "emit"
    }


def cycle_length(n: Network) -> int | None:
    """lcm of the hyperperiods closing the abstraction loops (``wait`` invariants)"""
    periods = []
    for automaton in n.automata:
        for location in automaton.locations:
            if location.id == "wait":
                periods.extend(c.bound for c in location.invariant if c.left == "x" and c.op == "<=")
    return math.lcm(*periods) if periods else None


def compose_with_observer(a: Network, req: Requirement) -> Network:
    channels = [Channel(id=event, kind=ChannelKind.BROADCAST) for event in req.events]
    return compose([a, Network(automata=[build_observer(req)], channels=channels)])


def compute_bound(
    a: Network,
    req: Requirement,
    options: BuildOptions | None = None,
    cycle: int | None = None,
) -> BoundResult:
    """Extremal Obs.x at Obs.recv over A(N_E) || Obs"""
    problems = errors_only(validate_requirement(req))
    if problems:
        raise InputError("invalid requirement", diagnostics=problems)
    started = time.perf_counter()
    missing = [event for event in req.events if event not in emitted_events(a)]
    if missing:
        logger.info("bound_unsatisfied", requirement=str(req), missing=missing)
        return BoundResult(requirement=str(req), status=QueryStatus.UNSATISFIED, hint=UNSATISFIED_HINT)

    cycle = cycle or cycle_length(a)
    ceiling = 2 * cycle * (req.chain_length - 1) if cycle else None
    base = options or BuildOptions()
    build = base.model_copy(
        update={
            "extrapolate": True,
            "query_clocks": [OBSERVER_CLOCK],
            "query_ceiling": ceiling,
            "observed": [at(OBSERVER_ID, RECV)],
        }
    )
    graph = build_zone_graph(compose_with_observer(a, req), options=build)
    extremum = query_extremum(graph, at(OBSERVER_ID, RECV), OBSERVER_CLOCK, "sup" if req.mode == "max" else "inf")
    hints = {QueryStatus.UNSATISFIED: UNSATISFIED_HINT, QueryStatus.UNBOUNDED: UNBOUNDED_HINT}
    result = BoundResult(
        requirement=str(req),
        status=extremum.status,
        bound=extremum.value,
        states_explored=graph.stats.stored,
        wall_time=round(time.perf_counter() - started, 6),
        hint=hints.get(extremum.status),
    )
    logger.info("bound_computed", requirement=str(req), status=result.status.value, bound=result.bound)
    return result
