"""
Exact abstraction automata of the producing task of a core

The automaton reproduces the absolute instants at which the task emits its
events over one hyperperiod, then loops. Location names follow a fixed
scheme: ``<segment>_<k>`` waits for the first event of period k,
``<segment>_<k>_<i>_<j>`` for the j-th event on the i-th interval of that
period, ``act`` picks the job of the first period and ``wait`` idles until
the hyperperiod ends.
"""

import structlog

from src.abstraction.events import EventSpec, Producer
from src.abstraction.intervals import IvTable
from src.automata.model import (
    Channel,
    ChannelKind,
    Edge,
    Location,
    Network,
    TimedAutomaton,
    clock_eq,
    clock_ge,
    clock_le,
    emit,
)
from src.automata.network import compose
from src.errors import UsageError
from src.rts.model import Task

logger = structlog.get_logger(__name__)

ACT = "act"
WAIT = "wait"


def abstraction_id(core: str) -> str:
    return f"A_{core}"


class _Builder:
    """Locations and edges of one abstraction, shared by both constructions"""

    def __init__(self, task: Task, iv: IvTable, e: EventSpec):
        self.task = task
        self.iv = iv
        self.producers = e.producers_of(task)
        if not self.producers:
            raise UsageError(f"{task.name} produces no event")
        self.periods = iv.periods(self.producers[0].segment)
        for producer in self.producers:
            first = producer.first.event
            for k in range(1, self.periods + 1):
                try:
                    if not iv.get(producer.segment, first, k):
                        raise KeyError
                except KeyError:
                    raise UsageError(
                        f"missing intervals of {producer.segment} for period {k}", segment=producer.segment
                    ) from None
        self.hp = self.periods * task.period
        self.uses_y = any(p.multi_event for p in self.producers)
        self.locations: list[Location] = []
        self.edges: list[Edge] = []

    def intervals(self, producer: Producer, k: int) -> list[tuple[int, int]]:
        return list(self.iv.get(producer.segment, producer.first.event, k))

    def add_locations(self, producer: Producer, initial: bool) -> None:
        s, emits = producer.segment, producer.emits
        for k in range(1, self.periods + 1):
            branches = self.intervals(producer, k)
            self.locations.append(
                Location(
                    id=f"{s}_{k}",
                    invariant=[clock_le("x", branches[-1][1])],
                    initial=initial and k == 1,
                )
            )
            for i, (_, high) in enumerate(branches, start=1):
                for j in range(2, len(emits) + 1):
                    self.locations.append(
                        Location(
                            id=f"{s}_{k}_{i}_{j}",
                            invariant=[
                                clock_le("x", high + emits[j - 1].rb - emits[0].rb),
                                clock_le("y", emits[j - 1].rb - emits[j - 2].lb),
                            ],
                        )
                    )

    def next_period(self, producer: Producer, k: int) -> str:
        return f"{producer.segment}_{k + 1}" if k < self.periods else WAIT

    def edge1(self, producer: Producer, k: int, iv: tuple[int, int], target: str, reset: bool) -> Edge:
        low, high = iv
        return Edge(
            source=f"{producer.segment}_{k}",
            target=target,
            guard=[clock_ge("x", low), clock_le("x", high)],
            sync=emit(producer.first.event),
            resets=["y"] if reset else [],
        )

    def edge2(
        self, producer: Producer, k: int, i: int, j: int, iv: tuple[int, int], target: str, reset: bool
    ) -> Edge:
        emits = producer.emits
        return Edge(
            source=f"{producer.segment}_{k}_{i}_{j}",
            target=target,
            guard=[
                clock_ge("x", iv[0] + emits[j - 1].lb - emits[0].lb),
                clock_ge("y", emits[j - 1].lb - emits[j - 2].rb),
            ],
            sync=emit(emits[j - 1].event),
            resets=["y"] if reset else [],
        )

    def add_edges(self, producer: Producer) -> None:
        s, count = producer.segment, len(producer.emits)
        for k in range(1, self.periods + 1):
            for i, iv in enumerate(self.intervals(producer, k), start=1):
                if count > 1:
                    self.edges.append(self.edge1(producer, k, iv, f"{s}_{k}_{i}_2", reset=True))
                else:
                    self.edges.append(self.edge1(producer, k, iv, self.next_period(producer, k), reset=False))
                for j in range(2, count + 1):
                    if j < count:
                        self.edges.append(self.edge2(producer, k, i, j, iv, f"{s}_{k}_{i}_{j + 1}", reset=True))
                    else:
                        self.edges.append(
                            self.edge2(producer, k, i, j, iv, self.next_period(producer, k), reset=False)
                        )

    def add_job_switches(self) -> None:
        """Last emission of period k of one job may lead to the first period-(k+1) location of another"""
        for producer in self.producers:
            count = len(producer.emits)
            for k in range(1, self.periods):
                for i, iv in enumerate(self.intervals(producer, k), start=1):
                    for other in self.producers:
                        if other.segment == producer.segment:
                            continue
                        target = f"{other.segment}_{k + 1}"
                        if count == 1:
                            self.edges.append(self.edge1(producer, k, iv, target, reset=False))
                        else:
                            self.edges.append(self.edge2(producer, k, i, count, iv, target, reset=False))

    def automaton(self, core: str) -> TimedAutomaton:
        return TimedAutomaton(
            id=abstraction_id(core),
            clocks=["x", "y"] if self.uses_y else ["x"],
            locations=self.locations,
            edges=self.edges,
        )


def _hyperperiod_loop(target: str, hp: int) -> Edge:
    return Edge(source=WAIT, target=target, guard=[clock_eq("x", hp)], resets=["x"])


def generate_abstraction_single_job(t: Task, iv: IvTable, e: EventSpec) -> TimedAutomaton:
    """Abstraction of a task whose events all come from one segment"""
    builder = _Builder(t, iv, e)
    if len(builder.producers) != 1:
        raise UsageError(f"{t.name} has {len(builder.producers)} producing segments; use the general construction")
    (producer,) = builder.producers
    builder.add_locations(producer, initial=True)
    builder.locations.append(Location(id=WAIT, invariant=[clock_le("x", builder.hp)]))
    builder.add_edges(producer)
    builder.edges.append(_hyperperiod_loop(f"{producer.segment}_1", builder.hp))
    return builder.automaton(t.affinity)


def generate_abstraction_general(t: Task, iv: IvTable, e: EventSpec) -> TimedAutomaton:
    """Abstraction of a task producing from several jobs; single producers delegate"""
    builder = _Builder(t, iv, e)
    if len(builder.producers) == 1:
        return generate_abstraction_single_job(t, iv, e)
    builder.locations.append(Location(id=ACT, committed=True, initial=True))
    builder.locations.append(Location(id=WAIT, invariant=[clock_le("x", builder.hp)]))
    for producer in builder.producers:
        builder.add_locations(producer, initial=False)
    for producer in builder.producers:
        builder.edges.append(Edge(source=ACT, target=f"{producer.segment}_1"))
        builder.add_edges(producer)
    builder.add_job_switches()
    builder.edges.append(_hyperperiod_loop(ACT, builder.hp))
    logger.debug("general_abstraction_built", task=t.name, jobs=[p.segment for p in builder.producers])
    return builder.automaton(t.affinity)


def generate_abstraction(t: Task, iv: IvTable, e: EventSpec, coarse: bool = False) -> TimedAutomaton:
    """Exact abstraction, or the coarse one built on per-period hulls"""
    return generate_abstraction_general(t, iv.coarse() if coarse else iv, e)


def event_channels(e: EventSpec) -> list[Channel]:
    return [Channel(id=event, kind=ChannelKind.BROADCAST) for event in e.events]


def compose_abstract_network(parts: list[TimedAutomaton], e: EventSpec) -> Network:
    """A(N_E): the abstractions of all producing cores over one broadcast channel per event"""
    if len(parts) < 2:
        raise UsageError("an abstract network needs the abstractions of at least two cores")
    channels = event_channels(e)
    return compose([Network(automata=[part], channels=channels) for part in parts])

