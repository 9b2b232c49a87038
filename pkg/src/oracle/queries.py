"""
Integer shadows of the symbolic queries, used as ground truth in tests
"""

import csv
import math
from collections import defaultdict
from collections.abc import Hashable, Iterable
from pathlib import Path

from src.abstraction.events import EventSpec
from src.abstraction.intervals import IvEntry, IvTable, producing_task
from src.automata.model import Network
from src.bounds.observers import Requirement, RequirementKind
from src.engine.explorer import UNSATISFIED, Extremum, QueryStatus
from src.engine.intervals import IntervalSet
from src.oracle.digitized import TraceEvent, digitized_explore
from src.rts.generator import task_automaton_id
from src.rts.model import END, RtsSpec


def default_horizon(r: RtsSpec, cores: Iterable[str] | None = None) -> int:
    """Two cycles of the lcm of the hyperperiods involved"""
    hyperperiods = [r.hyperperiod(c) for c in (cores or r.hyperperiods)]
    return 2 * math.lcm(*hyperperiods)


def oracle_intervals(n: Network, r: RtsSpec, e: EventSpec, core: str, horizon: int | None = None) -> IvTable:
    """Integer instants of every first event of the producing task of core, grouped per period"""
    task = producing_task(r, e, core)
    hp = r.hyperperiod(core)
    graph = digitized_explore(n, horizon or hp)
    automaton = task_automaton_id(task.name)
    x, y = f"{automaton}.x", f"{automaton}.y"
    table = IvTable(core=core, hyperperiod=hp, states=len(graph.states))
    for producer in e.producers_of(task):
        first = producer.first
        points: dict[int, set[int]] = defaultdict(set)
        for state in graph.states:
            if graph.location(state, automaton) != producer.segment:
                continue
            if first.lb <= graph.value(state, y) <= first.rb:
                k = (state.time - graph.value(state, x)) // task.period + 1
                points[k].add(state.time)
        for k in range(1, hp // task.period + 1):
            table.entries.append(
                IvEntry(
                    task=task.name,
                    segment=producer.segment,
                    event=first.event,
                    period=k,
                    intervals=list(IntervalSet.from_points(points[k])),
                )
            )
    return table


def oracle_segment_runs(n: Network, task: str, segment: str, horizon: int) -> set[tuple[int, int]]:
    """(start, exit) instants of every execution of one segment that ends within the horizon"""
    graph = digitized_explore(n, horizon)
    automaton = task_automaton_id(task)
    a_index = graph.net.automaton_index[automaton]
    location = graph.net.automata[a_index].locations.index(segment)
    y = f"{automaton}.y"
    runs = set()
    for source, candidate, _ in graph.transitions:
        state = graph.states[source]
        leaves = any(edge.automaton == a_index and edge.source == location for edge in candidate.edges)
        if state.locations[a_index] == location and leaves:
            runs.add((state.time - graph.value(state, y), state.time))
    return runs


def oracle_response_times(n: Network, r: RtsSpec, core: str, horizon: int | None = None) -> dict[str, int | None]:
    """Largest activation-relative completion time of every task of core"""
    graph = digitized_explore(n, horizon or r.hyperperiod(core))
    worst: dict[str, int | None] = {}
    for task in r.partition(core):
        automaton = task_automaton_id(task.name)
        seen = [graph.value(s, f"{automaton}.x") for s in graph.states if graph.location(s, automaton) == END]
        worst[task.name] = max(seen, default=None)
    return worst


def oracle_emissions(n: Network, horizon: int) -> set[TraceEvent]:
    return digitized_explore(n, horizon).emissions()


def _chain_monitor(req: Requirement):
    """Chain semantics as a nondeterministic monitor over (phase, start time)"""
    if req.kind == RequirementKind.SIMPLE_MAX:
        first, last = req.events

        def simple(state: Hashable, event: str, now: int) -> list[tuple[Hashable, int | None]]:
            phase, start = state
            if phase == "idle" and event == first:
                return [(("armed", now), None)]
            if phase == "armed" and event == last:
                return [(("idle", None), now - start)]
            return [(state, None)]

        return ("idle", None), simple

    w, r, w2 = req.events
    restart_while_reading = req.kind == RequirementKind.LF

    def chain(state: Hashable, event: str, now: int) -> list[tuple[Hashable, int | None]]:
        phase, start = state
        if phase == "await_w" and event == w:
            return [(("await_r", now), None)]
        if phase == "await_r" and event == w and restart_while_reading:
            return [(("await_r", now), None)]
        if phase == "await_r" and event == r:
            return [(("await_w2", start), None)]
        if phase == "await_w2" and event == w:
            return [(state, None), (("await_r", now), None)]
        if phase == "await_w2" and event == w2:
            return [(("await_w", None), now - start)]
        return [(state, None)]

    return ("await_w", None), chain


def oracle_bound(n: Network, req: Requirement, horizon: int) -> Extremum:
    """Extremal latency of the completed chains over all integer traces up to the horizon"""
    graph = digitized_explore(n, horizon, monitor=_chain_monitor(req))
    if not graph.latencies:
        return UNSATISFIED
    value = max(graph.latencies) if req.mode == "max" else min(graph.latencies)
    return Extremum(QueryStatus.OK, value)


def dump_timeline_csv(events: Iterable[TraceEvent], path: Path) -> None:
    """``event,time,automaton`` rows sorted by time"""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["event", "time", "automaton"])
        for item in sorted(events, key=lambda ev: (ev.time, ev.event, ev.automaton)):
            writer.writerow([item.event, item.time, item.automaton])
