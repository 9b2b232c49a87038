"""
Enumeration of the discrete transitions offered by a network state

Both engines start from the same candidates; the symbolic explorer restricts
them to zones, the digitized oracle evaluates them at integer valuations.
"""

import itertools
from dataclasses import dataclass

from src.automata.discrete import DiscreteState
from src.engine.compiled import CompiledEdge, CompiledNetwork
from src.zones.dbm import Atom, Dbm


@dataclass(frozen=True)
class Candidate:
    edges: tuple[CompiledEdge, ...]
    channel: int | None
    priority: int
    guard: tuple[Atom, ...]
    # region on which the transition counts as enabled for priority purposes
    enabling: tuple[Atom, ...]
    # receive guards of broadcast receivers staying out; none of them may hold
    excluded: tuple[tuple[Atom, ...], ...] = ()

    def label(self) -> str:
        return "; ".join(e.label for e in self.edges)

    def targets(self, locations: tuple[int, ...]) -> tuple[int, ...]:
        moved = list(locations)
        for edge in self.edges:
            moved[edge.automaton] = edge.target
        return tuple(moved)

    def resets(self) -> list[int]:
        return [clock for edge in self.edges for clock in edge.resets]

    def effects(self) -> list:
        return [effect for edge in self.edges for effect in edge.effects]


def candidates(net: CompiledNetwork, locations: tuple[int, ...], discrete: DiscreteState) -> list[Candidate]:
    """All data-enabled transitions, after the committed filter"""
    found: list[Candidate] = []
    for a_index, automaton in enumerate(net.automata):
        loc = locations[a_index]
        for edge in automaton.silent[loc]:
            if edge.enabled_data(discrete):
                found.append(Candidate((edge,), None, 0, edge.guard, edge.guard))
        for channel, emitters in automaton.emits[loc].items():
            for emitter in emitters:
                if emitter.enabled_data(discrete):
                    found.extend(_synchronizations(net, locations, discrete, emitter, channel))

    if net.committed(locations):
        found = [
            c
            for c in found
            if any(net.automata[e.automaton].committed[locations[e.automaton]] for e in c.edges)
        ]
    return found


def _synchronizations(
    net: CompiledNetwork,
    locations: tuple[int, ...],
    discrete: DiscreteState,
    emitter: CompiledEdge,
    channel: int,
) -> list[Candidate]:
    priority = net.channel_priority[channel]
    receivers_per_automaton: list[list[CompiledEdge]] = []
    for b_index, other in enumerate(net.automata):
        if b_index == emitter.automaton:
            continue
        ready = [r for r in other.receives[locations[b_index]].get(channel, []) if r.enabled_data(discrete)]
        if ready:
            receivers_per_automaton.append(ready)

    if not net.channel_broadcast[channel]:
        return [
            Candidate(
                (emitter, receiver),
                channel,
                priority,
                emitter.guard + receiver.guard,
                emitter.guard + receiver.guard,
            )
            for ready in receivers_per_automaton
            for receiver in ready
        ]

    # broadcast: every automaton joins with one of its edges or stays out
    choices: list[list[CompiledEdge | None]] = []
    for ready in receivers_per_automaton:
        options: list[CompiledEdge | None] = list(ready)
        if all(r.guard for r in ready):
            options.append(None)
        choices.append(options)

    result = []
    for combo in itertools.product(*choices):
        joined = [r for r in combo if r is not None]
        guard = emitter.guard + tuple(a for r in joined for a in r.guard)
        excluded = tuple(
            r.guard for ready, pick in zip(receivers_per_automaton, combo, strict=True) if pick is None for r in ready
        )
        result.append(Candidate((emitter, *joined), channel, priority, guard, emitter.guard, excluded))
    return result


def subtract(zone: Dbm, atoms: tuple[Atom, ...]) -> list[Dbm]:
    """Split zone minus the conjunction of atoms into disjoint zones"""
    pieces: list[Dbm] = []
    rest: Dbm | None = zone
    for atom in atoms:
        assert rest is not None
        outside = rest.constrain(atom.negated())
        if outside is not None:
            pieces.append(outside)
        rest = rest.constrain(atom)
        if rest is None:
            break
    return pieces


def enabled_pieces(zone: Dbm, candidate: Candidate, higher: list[tuple[Atom, ...]]) -> list[Dbm]:
    """Parts of zone where candidate fires: its guard holds, no abstaining
    receiver could take part and no higher-priority transition is enabled"""
    base = zone.constrain_all(candidate.guard)
    if base is None:
        return []
    pieces = [base]
    for region in (*candidate.excluded, *higher):
        if not region or zone.intersects(region):
            pieces = [part for piece in pieces for part in subtract(piece, region)]
            if not pieces:
                break
    return pieces
