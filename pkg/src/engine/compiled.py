"""
Index-based form of a Network shared by the symbolic explorer and the oracle
"""

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from src.automata.discrete import DiscreteLayout, DiscreteState, Effect, Test
from src.automata.model import ChannelKind, ClockConstraint, Network
from src.automata.network import validate_network
from src.engine.formula import DataAtom, LocationAtom, StateFormula
from src.errors import InputError, UsageError
from src.zones.dbm import Atom, encode


def constraint_atoms(constraint: ClockConstraint, index: dict[str, int]) -> list[Atom]:
    """Encode ``left - right op bound`` as DBM atoms over clock indices"""
    try:
        i = index[constraint.left]
        j = 0 if constraint.right is None else index[constraint.right]
    except KeyError as e:
        raise InputError(f"unknown clock {e.args[0]}") from None
    c, op = constraint.bound, constraint.op
    atoms = []
    if op in ("<=", "<", "=="):
        atoms.append(Atom(i, j, encode(c, strict=op == "<")))
    if op in (">=", ">", "=="):
        atoms.append(Atom(j, i, encode(-c, strict=op == ">")))
    return atoms


@dataclass(frozen=True)
class CompiledEdge:
    automaton: int
    index: int
    source: int
    target: int
    guard: tuple[Atom, ...]
    tests: tuple[Test, ...]
    channel: int | None
    emit: bool
    resets: tuple[int, ...]
    effects: tuple[Effect, ...]
    label: str

    def enabled_data(self, state: DiscreteState) -> bool:
        return all(t(state) for t in self.tests)


@dataclass
class CompiledAutomaton:
    id: str
    locations: list[str]
    committed: list[bool]
    invariants: list[tuple[Atom, ...]]
    initial: int
    silent: list[list[CompiledEdge]] = field(default_factory=list)
    emits: list[dict[int, list[CompiledEdge]]] = field(default_factory=list)
    receives: list[dict[int, list[CompiledEdge]]] = field(default_factory=list)


@dataclass(frozen=True)
class CompiledFormula:
    locations: tuple[tuple[int, int], ...]
    tests: tuple[Test, ...]
    clocks: tuple[Atom, ...]
    never: bool = False

    def holds_discrete(self, locations: tuple[int, ...], discrete: DiscreteState) -> bool:
        if self.never:
            return False
        return all(locations[a] == loc for a, loc in self.locations) and all(
            t(discrete) for t in self.tests
        )


class CompiledNetwork:
    def __init__(self, network: Network, check: bool = True):
        if check:
            problems = validate_network(network)
            if problems:
                raise InputError("network is not well formed", diagnostics=problems)
        self.network = network
        self.layout = DiscreteLayout(network)
        self.clock_names = network.clock_names()
        self.clock_index = {name: i + 1 for i, name in enumerate(self.clock_names)}
        self.channel_ids = [c.id for c in network.channels]
        self.channel_index = {c: i for i, c in enumerate(self.channel_ids)}
        self.channel_broadcast = [c.kind == ChannelKind.BROADCAST for c in network.channels]
        self.channel_priority = [c.priority for c in network.channels]
        self.closed = True
        self.max_constants = np.zeros(len(self.clock_names) + 1, dtype=np.int64)
        self.automata = [self._compile_automaton(a_index) for a_index in range(len(network.automata))]
        self.automaton_index = {a.id: i for i, a in enumerate(self.automata)}

    @property
    def clocks(self) -> int:
        return len(self.clock_names)

    @property
    def initial_locations(self) -> tuple[int, ...]:
        return tuple(a.initial for a in self.automata)

    def _atoms(self, owner: int, constraints: Iterable[ClockConstraint]) -> tuple[Atom, ...]:
        automaton = self.network.automata[owner]
        atoms: list[Atom] = []
        for constraint in constraints:
            qualified = ClockConstraint(
                left=self.network.resolve_clock(automaton, constraint.left) or constraint.left,
                right=None
                if constraint.right is None
                else self.network.resolve_clock(automaton, constraint.right) or constraint.right,
                op=constraint.op,
                bound=constraint.bound,
            )
            self.closed = self.closed and constraint.closed
            encoded = constraint_atoms(qualified, self.clock_index)
            self._note_constants(encoded)
            atoms.extend(encoded)
        return tuple(atoms)

    def _note_constants(self, atoms: Iterable[Atom]) -> None:
        for atom in atoms:
            value = abs(int(atom.raw) >> 1)
            for clock in (atom.i, atom.j):
                if clock:
                    self.max_constants[clock] = max(self.max_constants[clock], value)

    def _compile_automaton(self, a_index: int) -> CompiledAutomaton:
        automaton = self.network.automata[a_index]
        names = automaton.location_ids()
        position = {name: i for i, name in enumerate(names)}
        compiled = CompiledAutomaton(
            id=automaton.id,
            locations=names,
            committed=[loc.committed for loc in automaton.locations],
            invariants=[self._atoms(a_index, loc.invariant) for loc in automaton.locations],
            initial=position[automaton.initial.id],
            silent=[[] for _ in names],
            emits=[{} for _ in names],
            receives=[{} for _ in names],
        )
        for e_index, edge in enumerate(automaton.edges):
            channel = None if edge.sync is None else self.channel_index[edge.sync.channel]
            compiled_edge = CompiledEdge(
                automaton=a_index,
                index=e_index,
                source=position[edge.source],
                target=position[edge.target],
                guard=self._atoms(a_index, edge.guard),
                tests=tuple(self.layout.test(c) for c in edge.condition),
                channel=channel,
                emit=edge.sync is not None and edge.sync.direction == "emit",
                resets=tuple(
                    self.clock_index[self.network.resolve_clock(automaton, c) or c] for c in edge.resets
                ),
                effects=tuple(self.layout.effect(u) for u in edge.updates),
                label=f"{automaton.id}: {edge.label()}",
            )
            if channel is None:
                compiled.silent[compiled_edge.source].append(compiled_edge)
            elif compiled_edge.emit:
                compiled.emits[compiled_edge.source].setdefault(channel, []).append(compiled_edge)
            else:
                compiled.receives[compiled_edge.source].setdefault(channel, []).append(compiled_edge)
        return compiled

    # helpers for the explorers

    def invariant(self, locations: tuple[int, ...]) -> list[Atom]:
        atoms: list[Atom] = []
        for automaton, loc in zip(self.automata, locations, strict=True):
            atoms.extend(automaton.invariants[loc])
        return atoms

    def committed(self, locations: tuple[int, ...]) -> bool:
        return any(a.committed[loc] for a, loc in zip(self.automata, locations, strict=True))

    def location_names(self, locations: tuple[int, ...]) -> list[str]:
        return [f"{a.id}.{a.locations[loc]}" for a, loc in zip(self.automata, locations, strict=True)]

    def clock(self, name: str) -> int:
        try:
            return self.clock_index[name]
        except KeyError:
            raise UsageError(f"unknown clock {name}") from None

    def compile_formula(self, formula: StateFormula) -> CompiledFormula:
        locations: list[tuple[int, int]] = []
        tests: list[Test] = []
        clock_atoms: list[Atom] = []
        for atom in formula.atoms:
            if isinstance(atom, LocationAtom):
                try:
                    a_index = self.automaton_index[atom.automaton]
                    loc = self.automata[a_index].locations.index(atom.location)
                except (KeyError, ValueError):
                    raise InputError(f"unknown location {atom}") from None
                locations.append((a_index, loc))
            elif isinstance(atom, DataAtom):
                tests.append(self.layout.test(atom.comparison))
            else:
                clock_atoms.extend(constraint_atoms(atom.constraint, self.clock_index))
        return CompiledFormula(tuple(locations), tuple(tests), tuple(clock_atoms), formula.never)

    def observe_constants(self, formula: StateFormula) -> None:
        """Fold the constants of a formula into the extrapolation bounds"""
        self._note_constants(self.compile_formula(formula).clocks)
