"""
Test cases for the integer-time oracle
"""

import csv

import pytest

from src.abstraction.generator import compose_abstract_network, generate_abstraction
from src.abstraction.intervals import IvEntry, IvTable
from src.automata.model import ClockConstraint, Edge, Location, Network, TimedAutomaton
from src.bounds.observers import Requirement, RequirementKind
from src.engine import IntervalSet, QueryStatus
from src.errors import ModelClassError, ResourceError
from src.oracle import (
    TraceEvent,
    default_horizon,
    digitized_explore,
    dump_timeline_csv,
    oracle_bound,
    oracle_emissions,
    oracle_intervals,
    oracle_response_times,
    oracle_segment_runs,
)
from src.oracle.queries import _chain_monitor


def _ticker(op: str = "<=") -> Network:
    return Network(
        automata=[
            TimedAutomaton(
                id="T",
                clocks=["x"],
                locations=[Location(id="a", initial=True, invariant=[ClockConstraint(left="x", op=op, bound=2)])],
                edges=[Edge(source="a", target="a", guard=[ClockConstraint(left="x", op=">=", bound=2)], resets=["x"])],
            )
        ]
    )


@pytest.fixture(scope="module")
def abstract_network(rts, events1):
    def table(task, segment, event, periods):
        return IvTable(
            entries=[
                IvEntry(task=task, segment=segment, event=event, period=k, intervals=iv)
                for k, iv in enumerate(periods, start=1)
            ]
        )

    a1 = generate_abstraction(rts.task("t1"), table("t1", "s1", "e2", [[(7, 9)], [(27, 29)], [(47, 50)]]), events1)
    a2 = generate_abstraction(rts.task("t3"), table("t3", "s5", "e1", [[(2, 4)], [(22, 26), (32, 38)]]), events1)
    return compose_abstract_network([a1, a2], events1)


def test_open_constraints_and_empty_horizons_are_rejected():
    with pytest.raises(ModelClassError):
        digitized_explore(_ticker("<"), 10)
    with pytest.raises(ModelClassError):
        digitized_explore(_ticker(), 0)


def test_time_stops_at_the_horizon():
    graph = digitized_explore(_ticker(), 5)
    assert max(s.time for s in graph.states) == 5
    # the clock never exceeds its invariant
    assert {graph.value(s, "T.x") for s in graph.states} == {0, 1, 2}


def test_budget_is_enforced():
    with pytest.raises(ResourceError):
        digitized_explore(_ticker(), 50, state_budget=10)


def test_default_horizon_spans_two_cycles(rts):
    assert default_horizon(rts) == 240
    assert default_horizon(rts, ["c2"]) == 80


def test_response_times_match_the_symbolic_ones(rts, network_c2):
    assert oracle_response_times(network_c2, rts, "c2") == {"t3": 18, "t4": 40}


def test_first_segment_of_t4_ends_between_18_and_22(network_c2):
    runs = oracle_segment_runs(network_c2, "t4", "s6", 40)
    assert {end for _, end in runs} == set(range(18, 23))
    assert {start for start, _ in runs} == {2, 3, 4}


def test_integer_intervals_of_the_first_example(rts, events1, network_c2):
    table = oracle_intervals(network_c2, rts, events1, "c2")
    assert table.get("s5", "e1", 1) == IntervalSet.of((2, 4))
    assert table.get("s5", "e1", 2) == IntervalSet.of((22, 26), (32, 38))


def test_emissions_and_timeline(abstract_network, tmp_path):
    events = oracle_emissions(abstract_network, 60)
    assert {ev.time for ev in events if ev.event == "e1" and ev.time < 40} == {2, 3, 4, *range(22, 27), *range(32, 39)}
    assert {ev.automaton for ev in events} == {"A_c1", "A_c2"}

    target = tmp_path / "timeline.csv"
    dump_timeline_csv([TraceEvent("e2", 9, "A_c1"), TraceEvent("e1", 2, "A_c2")], target)
    rows = list(csv.reader(target.open(encoding="utf-8")))
    assert rows == [["event", "time", "automaton"], ["e1", "2", "A_c2"], ["e2", "9", "A_c1"]]


def test_chain_monitors():
    """Test first-start and last-start restarts on a hand-fed event sequence"""
    ff = Requirement(kind=RequirementKind.FF, events=["w", "r", "w2"])
    lf = Requirement(kind=RequirementKind.LF, events=["w", "r", "w2"])

    def run(req, trace):
        states = {_chain_monitor(req)[0]}
        step = _chain_monitor(req)[1]
        latencies = set()
        for event, now in trace:
            following = set()
            for state in states:
                for nxt, latency in step(state, event, now):
                    following.add(nxt)
                    if latency is not None:
                        latencies.add(latency)
            states = following
        return latencies

    trace = [("w", 0), ("w", 3), ("r", 5), ("w2", 9)]
    assert run(ff, trace) == {9}
    assert run(lf, trace) == {6}

    simple = Requirement(kind=RequirementKind.SIMPLE_MAX, events=["a", "b"])
    assert run(simple, [("a", 1), ("a", 2), ("b", 4), ("b", 6)]) == {3}


def test_oracle_bound_agrees_with_the_symbolic_bound(abstract_network, simple_max):
    found = oracle_bound(abstract_network, simple_max, 240)
    assert found.status == QueryStatus.OK
    assert found.value == 18
    missing = oracle_bound(abstract_network, Requirement(kind=RequirementKind.SIMPLE_MAX, events=["e1", "e9"]), 60)
    assert missing.status == QueryStatus.UNSATISFIED
