"""
Latency requirements and the observer automata measuring them

Observers only receive on event channels and carry no invariant, so they
never block the abstractions they watch. Clock Obs.x is reset where a chain
starts; its value at ``recv`` is the latency of the completed chain.
"""

from enum import Enum
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from src.automata.model import Edge, Location, TimedAutomaton, receive
from src.errors import Diagnostic

OBSERVER_ID = "Obs"
OBSERVER_CLOCK = f"{OBSERVER_ID}.x"
RECV = "recv"


class RequirementKind(str, Enum):
    SIMPLE_MAX = "simple-max"
    FF = "ff"
    LF = "lf"


class Requirement(BaseModel):
    """Latency between event occurrences along a chain"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: RequirementKind
    events: list[str] = Field(..., min_length=2, max_length=3)
    mode: Literal["min", "max"] = "max"

    @property
    def chain_length(self) -> int:
        return len(self.events)

    def __str__(self) -> str:
        return f"{self.mode} {self.kind.value}({', '.join(self.events)})"


def validate_requirement(req: Requirement, events: list[str] | None = None) -> list[Diagnostic]:
    diagnostics: list[Diagnostic] = []
    expected = 2 if req.kind == RequirementKind.SIMPLE_MAX else 3
    if len(req.events) != expected:
        diagnostics.append(
            Diagnostic(path="/events", message=f"{req.kind.value} takes {expected} events, got {len(req.events)}")
        )
    if len(set(req.events)) != len(req.events):
        diagnostics.append(Diagnostic(path="/events", message="chain events must be distinct"))
    if req.kind == RequirementKind.SIMPLE_MAX and req.mode == "min":
        diagnostics.append(
            Diagnostic(path="/mode", message="simple-max measures from the earliest chain start; min is not supported")
        )
    if events is not None:
        for index, event in enumerate(req.events):
            if event not in events:
                diagnostics.append(Diagnostic(path=f"/events/{index}", message=f"undeclared event {event}"))
    return diagnostics


def _simple_max(start: str, end: str) -> TimedAutomaton:
    return TimedAutomaton(
        id=OBSERVER_ID,
        clocks=["x"],
        locations=[Location(id="idle", initial=True), Location(id=RECV)],
        edges=[
            Edge(source="idle", target=RECV, sync=receive(start), resets=["x"]),
            Edge(source=RECV, target="idle", sync=receive(end)),
        ],
    )


def _chain(w: str, r: str, w2: str, last_start: bool) -> TimedAutomaton:
    edges = [
        Edge(source="await_w_1", target="await_r_1", sync=receive(w), resets=["x"]),
        Edge(source="await_r_1", target="await_w_2", sync=receive(r)),
        # a later w may be ignored or may restart the chain
        Edge(source="await_w_2", target="await_w_2", sync=receive(w)),
        Edge(source="await_w_2", target="await_r_1", sync=receive(w), resets=["x"]),
        Edge(source="await_w_2", target=RECV, sync=receive(w2)),
        Edge(source=RECV, target="await_w_1"),
    ]
    if last_start:
        edges.insert(1, Edge(source="await_r_1", target="await_r_1", sync=receive(w), resets=["x"]))
    return TimedAutomaton(
        id=OBSERVER_ID,
        clocks=["x"],
        locations=[
            Location(id="await_w_1", initial=True),
            Location(id="await_r_1"),
            Location(id="await_w_2"),
            Location(id=RECV, committed=True),
        ],
        edges=edges,
    )


def build_observer(req: Requirement) -> TimedAutomaton:
    if req.kind == RequirementKind.SIMPLE_MAX:
        start, end = req.events
        return _simple_max(start, end)
    w, r, w2 = req.events
    return _chain(w, r, w2, last_start=req.kind == RequirementKind.LF)


def load_requirement(path: Path) -> Requirement:
    return Requirement.model_validate_json(path.read_text(encoding="utf-8"))
