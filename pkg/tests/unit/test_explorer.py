"""
Test cases for the symbolic explorer and its queries
"""

import random

import pytest

from src.abstraction.reference import REF_CLOCK, with_reference
from src.automata.model import (
    Channel,
    ChannelKind,
    ClockConstraint,
    Edge,
    Location,
    Network,
    TimedAutomaton,
    clock_ge,
    clock_le,
    emit,
    receive,
)
from src.engine import BuildOptions, QueryStatus, build_zone_graph, query_bounds, query_extremum, query_reachable
from src.engine.compiled import constraint_atoms
from src.engine.formula import at, clocks, parse_formula
from src.engine.intervals import IntervalSet
from src.errors import ModelClassError, ModelError, ResourceError, UsageError


def _one_step(low: int, high: int) -> Network:
    """a --(x >= low)--> b with x <= high in a"""
    automaton = TimedAutomaton(
        id="A",
        clocks=["x"],
        locations=[Location(id="a", initial=True, invariant=[clock_le("x", high)]), Location(id="b")],
        edges=[Edge(source="a", target="b", guard=[clock_ge("x", low)])],
    )
    return Network(automata=[automaton])


def test_bounds_of_a_clock_after_one_step():
    """Test that the reference automaton caps the otherwise unbounded clock"""
    graph = build_zone_graph(with_reference(_one_step(2, 5), 10))
    assert list(query_bounds(graph, at("A", "b"), "A.x")) == [(2, 10)]
    assert query_extremum(graph, at("A", "b"), "A.x", "inf").value == 2
    assert query_extremum(graph, at("A", "b"), REF_CLOCK, "sup").value == 10
    assert query_bounds(graph, parse_formula("A.b && A.x <= 5"), REF_CLOCK) == IntervalSet.of((2, 5))


def test_unbounded_clock_is_reported():
    graph = build_zone_graph(_one_step(2, 5))
    assert query_extremum(graph, at("A", "b"), "A.x", "sup").status == QueryStatus.UNBOUNDED


def test_unreachable_formula_is_unsatisfied():
    graph = build_zone_graph(_one_step(6, 5))
    assert not query_reachable(graph, at("A", "b"))
    assert query_extremum(graph, at("A", "b"), "A.x").status == QueryStatus.UNSATISFIED
    assert not query_bounds(graph, at("A", "b"), "A.x")


def test_handshake_needs_both_parties():
    """Test that an emitter only moves together with a receiver"""
    sender = TimedAutomaton(
        id="S",
        clocks=["x"],
        locations=[Location(id="a", initial=True, invariant=[clock_le("x", 3)]), Location(id="b")],
        edges=[Edge(source="a", target="b", guard=[clock_ge("x", 1)], sync=emit("go"))],
    )
    receiver = TimedAutomaton(
        id="R",
        locations=[Location(id="idle", initial=True), Location(id="got", committed=True)],
        edges=[Edge(source="idle", target="got", sync=receive("go"))],
    )
    alone = build_zone_graph(Network(automata=[sender], channels=[Channel(id="go")]))
    assert not query_reachable(alone, at("S", "b"))

    both = build_zone_graph(Network(automata=[sender, receiver], channels=[Channel(id="go")]))
    assert list(query_bounds(both, at("R", "got"), "S.x")) == [(1, 3)]
    trace = both.trace_to(at("R", "got"))
    assert trace is not None and trace[0].startswith("init:")
    assert "a -> b go!" in trace[-1]


def test_priority_removes_the_lower_transition_where_the_higher_is_enabled():
    """Test that a silent edge only fires before a higher-priority broadcast becomes enabled"""
    low = TimedAutomaton(
        id="L",
        locations=[
            Location(id="a", initial=True, invariant=[clock_le("t", 5)]),
            Location(id="c", committed=True),
        ],
        edges=[Edge(source="a", target="c", guard=[clock_ge("t", 1)])],
    )
    high = TimedAutomaton(
        id="H",
        locations=[Location(id="h", initial=True)],
        edges=[Edge(source="h", target="h", guard=[clock_ge("t", 3)], sync=emit("hi"))],
    )
    n = Network(
        automata=[low, high],
        channels=[Channel(id="hi", kind=ChannelKind.BROADCAST, priority=1)],
        shared_clocks=["t"],
    )
    graph = build_zone_graph(n)
    sup = query_extremum(graph, at("L", "c"), "t", "sup")
    assert (sup.value, sup.strict) == (3, True)
    assert query_extremum(graph, at("L", "c"), "t", "inf").value == 1
    with pytest.raises(ModelClassError):
        query_bounds(graph, at("L", "c"), "t")


def test_subsumption_does_not_change_answers(network_c2, rts):
    """Test that the passed-list inclusion check only saves states"""
    n = with_reference(network_c2, rts.hyperperiod("c2"))
    formula = parse_formula("TA_t3.s5 && TA_t3.y >= 2")
    on = build_zone_graph(n, options=BuildOptions(subsumption=True))
    off = build_zone_graph(n, options=BuildOptions(subsumption=False))
    assert query_bounds(on, formula, REF_CLOCK) == query_bounds(off, formula, REF_CLOCK)
    assert on.stats.stored <= off.stats.stored


def test_bounds_agree_with_inf_and_sup(network_c1, rts):
    n = with_reference(network_c1, rts.hyperperiod("c1"))
    graph = build_zone_graph(n)
    formula = parse_formula("TA_t1.s1 && 2 <= TA_t1.y <= 3")
    found = query_bounds(graph, formula, REF_CLOCK)
    assert found.min == query_extremum(graph, formula, REF_CLOCK, "inf").value
    assert found.max == query_extremum(graph, formula, REF_CLOCK, "sup").value


def test_state_budget_is_enforced(network_c1):
    with pytest.raises(ResourceError) as info:
        build_zone_graph(network_c1, options=BuildOptions(state_budget=5))
    assert info.value.exit_code == 2


def test_extrapolated_clocks_cannot_be_queried():
    graph = build_zone_graph(_one_step(2, 5), options=BuildOptions(extrapolate=True))
    with pytest.raises(UsageError):
        query_extremum(graph, at("A", "b"), "A.x")


def test_initial_invariant_violation_is_a_model_error():
    automaton = TimedAutomaton(
        id="A",
        clocks=["x"],
        locations=[Location(id="a", initial=True, invariant=[clock_ge("x", 1), clock_le("x", 0)])],
    )
    with pytest.raises(ModelError):
        build_zone_graph(Network(automata=[automaton]))


def test_stop_formula_ends_the_search_early():
    graph = build_zone_graph(_one_step(2, 5), stop=at("A", "b"))
    assert graph.stopped
    assert query_reachable(graph, at("A", "b"))


@pytest.mark.parametrize("core", ["c1", "c2"])
def test_committed_states_are_never_delayed(request, rts, core):
    """Test that no state with a committed location lets the reference clock advance past its parent"""
    n = with_reference(request.getfixturevalue(f"network_{core}"), rts.hyperperiod(core))
    graph = build_zone_graph(n)
    ref = graph.net.clock(REF_CLOCK)
    checked = 0
    for state, parent in zip(graph.states, graph.parents, strict=True):
        if parent is None or not graph.net.committed(state.locations):
            continue
        before = graph.states[parent[0]].zone.clock_interval(ref)[1]
        after = state.zone.clock_interval(ref)[1]
        assert after.value <= before.value
        checked += 1
    assert checked > 0


def _broadcast_network(lo: int, hi: int, late: int, early: int) -> Network:
    """E broadcasts bc once in [lo, hi]; R1 listens from late on, R2 until early, R3 always"""
    emitter = TimedAutomaton(
        id="E",
        locations=[
            Location(id="a", initial=True, invariant=[clock_le("t", hi)]),
            Location(id="b", committed=True),
            Location(id="c"),
        ],
        edges=[Edge(source="a", target="b", guard=[clock_ge("t", lo)], sync=emit("bc")), Edge(source="b", target="c")],
    )

    def listener(name: str, guard) -> TimedAutomaton:
        return TimedAutomaton(
            id=name,
            locations=[Location(id="idle", initial=True), Location(id="got")],
            edges=[Edge(source="idle", target="got", guard=guard, sync=receive("bc"))],
        )

    return Network(
        automata=[emitter, listener("R1", [clock_ge("t", late)]), listener("R2", [clock_le("t", early)]), listener("R3", [])],
        channels=[Channel(id="bc", kind=ChannelKind.BROADCAST)],
        shared_clocks=["t"],
    )


@pytest.mark.parametrize("seed", range(25))
def test_broadcast_receivers_join_whenever_enabled(seed):
    """Test that right after a broadcast every enabled receiver has moved and every idle one was disabled"""
    rng = random.Random(seed)
    lo = rng.randint(0, 3)
    hi = rng.randint(lo, 6)
    late, early = rng.randint(0, 6), rng.randint(0, 6)
    graph = build_zone_graph(_broadcast_network(lo, hi, late, early))
    guards = {
        "R1": constraint_atoms(clock_ge("t", late), graph.net.clock_index),
        "R2": constraint_atoms(clock_le("t", early), graph.net.clock_index),
        "R3": [],
    }
    after = graph.satisfying(at("E", "b"))
    assert after
    for index, _ in after:
        zone = graph.states[index].zone
        names = graph.net.location_names(graph.states[index].locations)
        for receiver, atoms in guards.items():
            if f"{receiver}.idle" in names:
                assert atoms and not zone.intersects(atoms), (receiver, names)
            else:
                assert zone.constrain_all(atoms) == zone, (receiver, names)
    assert not query_reachable(graph, at("E", "b") & at("R3", "idle"))


def test_broadcast_splits_the_zone_at_a_receiver_guard():
    graph = build_zone_graph(_broadcast_network(1, 4, 2, 6))
    skipped = query_extremum(graph, at("E", "b") & at("R1", "idle"), "t", "sup")
    assert (skipped.value, skipped.strict) == (2, True)
    joined = query_extremum(graph, at("E", "b") & at("R1", "got"), "t", "inf")
    assert (joined.value, joined.strict) == (2, False)


def _random_network(rng: random.Random) -> Network:
    """Up to three one-clock automata over one handshake channel, closed constraints up to 10"""
    automata = []
    for a in range(rng.randint(1, 3)):
        count = rng.randint(2, 3)
        locations = [
            Location(id=f"l{k}", initial=k == 0, invariant=[clock_le("x", rng.randint(2, 10))] if rng.random() < 0.6 else [])
            for k in range(count)
        ]
        edges = []
        for _ in range(rng.randint(1, 4)):
            guard = []
            if rng.random() < 0.6:
                guard = [rng.choice([clock_ge, clock_le])("x", rng.randint(0, 10))]
            edges.append(
                Edge(
                    source=f"l{rng.randrange(count)}",
                    target=f"l{rng.randrange(count)}",
                    guard=guard,
                    sync=rng.choice([None, None, emit("m"), receive("m")]),
                    resets=["x"] if rng.random() < 0.5 else [],
                )
            )
        automata.append(TimedAutomaton(id=f"A{a}", clocks=["x"], locations=locations, edges=edges))
    return Network(automata=automata, channels=[Channel(id="m")])


@pytest.mark.parametrize("seed", range(30))
def test_subsumption_keeps_answers_on_random_networks(seed):
    n = _random_network(random.Random(seed))
    on = build_zone_graph(with_reference(n, 12), options=BuildOptions(subsumption=True))
    off = build_zone_graph(with_reference(n, 12), options=BuildOptions(subsumption=False))
    for automaton in n.automata:
        for location in automaton.locations:
            formula = at(automaton.id, location.id)
            assert query_reachable(on, formula) == query_reachable(off, formula)
            assert query_bounds(on, formula, REF_CLOCK) == query_bounds(off, formula, REF_CLOCK), (seed, str(formula))
    assert on.stats.stored <= off.stats.stored


@pytest.mark.parametrize(
    "core,formula",
    [
        ("c2", "TA_t3.end"),
        ("c2", "TA_t3.s5 && TA_t3.y >= 2"),
        ("c1", "TA_t1.s1 && 2 <= TA_t1.y <= 3"),
    ],
)
def test_second_hyperperiod_repeats_the_first(request, rts, core, formula):
    """Test that a reference spanning two hyperperiods sees the first one shifted"""
    network = request.getfixturevalue(f"network_{core}")
    hp = rts.hyperperiod(core)
    once = query_bounds(build_zone_graph(with_reference(network, hp)), parse_formula(formula), REF_CLOCK)
    twice = build_zone_graph(with_reference(network, 2 * hp))
    later = parse_formula(formula) & clocks(ClockConstraint(left=REF_CLOCK, op=">=", bound=hp))
    assert once
    assert query_bounds(twice, later, REF_CLOCK) == IntervalSet.of(*[(a + hp, b + hp) for a, b in once])
