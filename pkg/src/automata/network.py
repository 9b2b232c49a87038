"""
Network validation, composition and serialization
"""

import json
from pathlib import Path
from typing import Any

from src.automata.expressions import Assign, BinOp, Comparison, QueueOp, QueueRead, Var
from src.automata.model import (
    Channel,
    ClockConstraint,
    Network,
    QueueVariable,
    ScalarVariable,
    TimedAutomaton,
)
from src.errors import Diagnostic, ModelError


def _duplicates(items: list[str]) -> list[str]:
    seen: set[str] = set()
    dupes: list[str] = []
    for item in items:
        if item in seen and item not in dupes:
            dupes.append(item)
        seen.add(item)
    return dupes


def _names_in(expr: Any) -> tuple[set[str], set[str]]:
    """(scalar names, queue names) read by an expression tree"""
    scalars: set[str] = set()
    queues: set[str] = set()
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            scalars.add(node.name)
        elif isinstance(node, QueueRead):
            queues.add(node.queue)
        elif isinstance(node, BinOp):
            stack.extend([node.left, node.right])
        elif isinstance(node, Comparison):
            stack.extend([node.left, node.right])
    return scalars, queues


def validate_network(n: Network) -> list[Diagnostic]:
    diagnostics: list[Diagnostic] = []

    def report(path: str, message: str) -> None:
        diagnostics.append(Diagnostic(path=path, message=message))

    for dupe in _duplicates([a.id for a in n.automata]):
        report("/automata", f"duplicate automaton id {dupe}")
    for dupe in _duplicates([c.id for c in n.channels]):
        report("/channels", f"duplicate channel id {dupe}")
    for dupe in _duplicates([v.name for v in n.variables]):
        report("/variables", f"duplicate variable {dupe}")
    for dupe in _duplicates(n.clock_names()):
        report("/", f"clock {dupe} declared twice")

    channels = {c.id for c in n.channels}
    scalars = {v.name for v in n.variables if isinstance(v, ScalarVariable)}
    queues = {v.name for v in n.variables if isinstance(v, QueueVariable)}

    for v_index, variable in enumerate(n.variables):
        path = f"/variables/{v_index}"
        if isinstance(variable, ScalarVariable):
            if variable.lower > variable.upper:
                report(path, f"empty range [{variable.lower},{variable.upper}]")
            elif not variable.lower <= variable.initial <= variable.upper:
                report(path + "/initial", f"initial value {variable.initial} out of range")
        elif len(variable.initial) > variable.capacity:
            report(path + "/initial", "initial queue exceeds capacity")

    for a_index, automaton in enumerate(n.automata):
        base = f"/automata/{a_index}"
        if "." in automaton.id:
            report(base + "/id", "automaton ids must not contain '.'")
        for dupe in _duplicates(automaton.clocks):
            report(base + "/clocks", f"duplicate clock {dupe}")
        for dupe in _duplicates(automaton.location_ids()):
            report(base + "/locations", f"duplicate location {dupe}")
        initials = [loc.id for loc in automaton.locations if loc.initial]
        if len(initials) != 1:
            report(base + "/locations", f"expected exactly one initial location, found {len(initials)}")
        location_ids = set(automaton.location_ids())

        def check_clocks(path: str, constraints: list[ClockConstraint]) -> None:
            for c_index, constraint in enumerate(constraints):
                for clock in constraint.clocks():
                    if n.resolve_clock(automaton, clock) is None:
                        report(f"{path}/{c_index}", f"undeclared clock {clock}")

        for l_index, location in enumerate(automaton.locations):
            check_clocks(f"{base}/locations/{l_index}/invariant", location.invariant)

        for e_index, edge in enumerate(automaton.edges):
            path = f"{base}/edges/{e_index}"
            if edge.source not in location_ids:
                report(path + "/source", f"undeclared location {edge.source}")
            if edge.target not in location_ids:
                report(path + "/target", f"undeclared location {edge.target}")
            check_clocks(path + "/guard", edge.guard)
            for clock in edge.resets:
                if n.resolve_clock(automaton, clock) is None:
                    report(path + "/resets", f"undeclared clock {clock}")
            if edge.sync is not None and edge.sync.channel not in channels:
                report(path + "/sync", f"undeclared channel {edge.sync.channel}")
            read_scalars: set[str] = set()
            read_queues: set[str] = set()
            for comparison in edge.condition:
                s, q = _names_in(comparison)
                read_scalars |= s
                read_queues |= q
            for update in edge.updates:
                if isinstance(update, Assign):
                    read_scalars.add(update.var)
                    s, q = _names_in(update.value)
                elif isinstance(update, QueueOp):
                    read_queues.add(update.queue)
                    s, q = set(), set()
                    for arg in update.args:
                        s2, q2 = _names_in(arg)
                        s, q = s | s2, q | q2
                read_scalars |= s
                read_queues |= q
            for name in sorted(read_scalars - scalars):
                report(path, f"undeclared variable {name}")
            for name in sorted(read_queues - queues):
                report(path, f"undeclared queue {name}")

    return diagnostics


def _merge_channels(channels: list[Channel], incoming: Channel) -> None:
    for existing in channels:
        if existing.id != incoming.id:
            continue
        if existing.kind != incoming.kind or existing.priority != incoming.priority:
            raise ModelError(
                f"channel {incoming.id} declared as {existing.kind.value}/{existing.priority} "
                f"and {incoming.kind.value}/{incoming.priority}",
                channel=incoming.id,
            )
        return
    channels.append(incoming)


def compose(parts: list[Network]) -> Network:
    """Parallel composition; automata keep their order of appearance"""
    if len(parts) == 1:
        return parts[0]
    automata: list[TimedAutomaton] = []
    channels: list[Channel] = []
    variables: dict[str, ScalarVariable | QueueVariable] = {}
    shared: list[str] = []
    for part in parts:
        for automaton in part.automata:
            if any(a.id == automaton.id for a in automata):
                raise ModelError(f"automaton id {automaton.id} used twice", automaton=automaton.id)
            automata.append(automaton)
        for channel in part.channels:
            _merge_channels(channels, channel)
        for variable in part.variables:
            known = variables.get(variable.name)
            if known is not None and known != variable:
                raise ModelError(f"variable {variable.name} declared differently", variable=variable.name)
            variables[variable.name] = variable
        shared.extend(c for c in part.shared_clocks if c not in shared)
    return Network(
        automata=automata,
        channels=channels,
        variables=list(variables.values()),
        shared_clocks=shared,
    )


def to_json(n: Network) -> str:
    return json.dumps(n.model_dump(mode="json"), indent=2) + "\n"


def from_json(text: str) -> Network:
    return Network.model_validate_json(text)


def dump_network(n: Network, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(n), encoding="utf-8")


def load_network(path: Path) -> Network:
    return from_json(path.read_text(encoding="utf-8"))


def network_json_schema() -> dict[str, Any]:
    schema = Network.model_json_schema()
    schema["title"] = "exact-bounds timed automata network"
    return schema
