"""
Timed automata with channels, priorities and discrete state
"""

from enum import Enum
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from src.automata.expressions import Comparison, Update

ClockOp = Literal["<", "<=", "==", ">=", ">"]


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class ClockConstraint(_Frozen):
    """Atomic constraint ``left - right op bound``; right defaults to the zero clock"""

    left: str
    op: ClockOp
    bound: int
    right: str | None = None

    @property
    def closed(self) -> bool:
        return self.op not in ("<", ">")

    def clocks(self) -> list[str]:
        return [self.left] if self.right is None else [self.left, self.right]

    def __str__(self) -> str:
        lhs = self.left if self.right is None else f"{self.left} - {self.right}"
        return f"{lhs} {self.op} {self.bound}"


def clock_le(clock: str, bound: int) -> ClockConstraint:
    return ClockConstraint(left=clock, op="<=", bound=bound)


def clock_ge(clock: str, bound: int) -> ClockConstraint:
    return ClockConstraint(left=clock, op=">=", bound=bound)


def clock_eq(clock: str, bound: int) -> ClockConstraint:
    return ClockConstraint(left=clock, op="==", bound=bound)


class Location(_Frozen):
    id: str
    invariant: list[ClockConstraint] = Field(default_factory=list)
    committed: bool = False
    initial: bool = False


class ChannelKind(str, Enum):
    HANDSHAKE = "handshake"
    BROADCAST = "broadcast"


class Channel(_Frozen):
    id: str
    kind: ChannelKind = ChannelKind.HANDSHAKE
    priority: int = Field(0, description="Higher value wins; silent edges have priority 0")


class Sync(_Frozen):
    channel: str
    direction: Literal["emit", "receive"]

    def __str__(self) -> str:
        return f"{self.channel}{'!' if self.direction == 'emit' else '?'}"


def emit(channel: str) -> Sync:
    return Sync(channel=channel, direction="emit")


def receive(channel: str) -> Sync:
    return Sync(channel=channel, direction="receive")


class Edge(_Frozen):
    source: str
    target: str
    guard: list[ClockConstraint] = Field(default_factory=list)
    condition: list[Comparison] = Field(default_factory=list)
    sync: Sync | None = None
    resets: list[str] = Field(default_factory=list)
    updates: list[Update] = Field(default_factory=list)

    def label(self) -> str:
        parts = [f"{self.source} -> {self.target}"]
        if self.sync is not None:
            parts.append(str(self.sync))
        return " ".join(parts)


class TimedAutomaton(_Frozen):
    id: str
    clocks: list[str] = Field(default_factory=list)
    locations: list[Location]
    edges: list[Edge] = Field(default_factory=list)

    def location(self, location_id: str) -> Location:
        for loc in self.locations:
            if loc.id == location_id:
                return loc
        raise KeyError(f"{self.id}.{location_id}")

    def location_ids(self) -> list[str]:
        return [loc.id for loc in self.locations]

    @property
    def initial(self) -> Location:
        return next(loc for loc in self.locations if loc.initial)

    def edges_from(self, location_id: str) -> list[Edge]:
        return [e for e in self.edges if e.source == location_id]

    def qualified(self, clock: str) -> str:
        return f"{self.id}.{clock}"


class ScalarVariable(_Frozen):
    kind: Literal["int"] = "int"
    name: str
    lower: int = 0
    upper: int = 1
    initial: int = 0


class QueueVariable(_Frozen):
    kind: Literal["queue"] = "queue"
    name: str
    capacity: int = Field(..., ge=1)
    initial: list[tuple[int, int]] = Field(default_factory=list)


Variable = Annotated[Union[ScalarVariable, QueueVariable], Field(discriminator="kind")]


class Network(_Frozen):
    automata: list[TimedAutomaton]
    channels: list[Channel] = Field(default_factory=list)
    variables: list[Variable] = Field(default_factory=list)
    shared_clocks: list[str] = Field(default_factory=list)

    def automaton(self, automaton_id: str) -> TimedAutomaton:
        for automaton in self.automata:
            if automaton.id == automaton_id:
                return automaton
        raise KeyError(automaton_id)

    def channel(self, channel_id: str) -> Channel:
        for channel in self.channels:
            if channel.id == channel_id:
                return channel
        raise KeyError(channel_id)

    def clock_names(self) -> list[str]:
        """Globally unique clock names in index order (index 0 is the zero clock)"""
        names = list(self.shared_clocks)
        for automaton in self.automata:
            names.extend(automaton.qualified(c) for c in automaton.clocks)
        return names

    def resolve_clock(self, automaton: TimedAutomaton, clock: str) -> str | None:
        if clock in automaton.clocks:
            return automaton.qualified(clock)
        if clock in self.shared_clocks:
            return clock
        return None
