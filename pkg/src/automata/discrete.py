"""
Runtime discrete state and compiled evaluation of guards and updates
"""

import operator
from collections.abc import Callable
from dataclasses import dataclass

from src.automata.expressions import (
    Assign,
    BinOp,
    Comparison,
    Const,
    QueueOp,
    QueueRead,
    Update,
    Var,
)
from src.automata.model import Network, QueueVariable, ScalarVariable
from src.errors import ModelError

Record = tuple[int, int]

_COMPARE: dict[str, Callable[[int, int], bool]] = {
    "==": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}
_ARITH: dict[str, Callable[[int, int], int]] = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
}


@dataclass(frozen=True)
class DiscreteState:
    scalars: tuple[int, ...]
    queues: tuple[tuple[Record, ...], ...]


class _Scratch:
    """Mutable copy of a DiscreteState while a transition's updates run"""

    __slots__ = ("scalars", "queues")

    def __init__(self, state: DiscreteState):
        self.scalars = list(state.scalars)
        self.queues = [list(q) for q in state.queues]

    def freeze(self) -> DiscreteState:
        return DiscreteState(tuple(self.scalars), tuple(tuple(q) for q in self.queues))


Reader = Callable[[DiscreteState | _Scratch], int]
Test = Callable[[DiscreteState | _Scratch], bool]
Effect = Callable[[_Scratch], None]


class DiscreteLayout:
    """Index of every declared variable, with bounds and capacities"""

    def __init__(self, network: Network):
        self.scalar_names: list[str] = []
        self.bounds: list[tuple[int, int]] = []
        self.queue_names: list[str] = []
        self.capacities: list[int] = []
        scalars: list[int] = []
        queues: list[tuple[Record, ...]] = []
        for variable in network.variables:
            if isinstance(variable, ScalarVariable):
                self.scalar_names.append(variable.name)
                self.bounds.append((variable.lower, variable.upper))
                scalars.append(variable.initial)
            elif isinstance(variable, QueueVariable):
                self.queue_names.append(variable.name)
                self.capacities.append(variable.capacity)
                queues.append(tuple(tuple(r) for r in variable.initial))
        self.scalar_index = {n: i for i, n in enumerate(self.scalar_names)}
        self.queue_index = {n: i for i, n in enumerate(self.queue_names)}
        self.initial = DiscreteState(tuple(scalars), tuple(queues))

    def describe(self, state: DiscreteState) -> dict[str, object]:
        described: dict[str, object] = dict(zip(self.scalar_names, state.scalars, strict=True))
        for name, queue in zip(self.queue_names, state.queues, strict=True):
            described[name] = [list(r) for r in queue]
        return described

    # compilation

    def reader(self, expr: Const | Var | QueueRead | BinOp) -> Reader:
        if isinstance(expr, Const):
            value = expr.value
            return lambda s: value
        if isinstance(expr, Var):
            index = self._scalar(expr.name)
            return lambda s: s.scalars[index]
        if isinstance(expr, QueueRead):
            q = self._queue(expr.queue)
            at = expr.index
            if expr.read == "len":
                return lambda s: len(s.queues[q])
            field = 1 if expr.read == "pr" else 0
            if expr.read == "head":
                at = 0
            return lambda s: s.queues[q][at][field] if len(s.queues[q]) > at else -1
        left, right = self.reader(expr.left), self.reader(expr.right)
        fn = _ARITH[expr.op]
        return lambda s: fn(left(s), right(s))

    def test(self, comparison: Comparison) -> Test:
        left, right = self.reader(comparison.left), self.reader(comparison.right)
        fn = _COMPARE[comparison.op]
        return lambda s: fn(left(s), right(s))

    def effect(self, update: Update) -> Effect:
        if isinstance(update, Assign):
            index = self._scalar(update.var)
            value = self.reader(update.value)
            lower, upper = self.bounds[index]
            name = update.var

            def run_assign(s: _Scratch) -> None:
                result = value(s)
                if not lower <= result <= upper:
                    raise ModelError(f"{name} := {result} leaves [{lower},{upper}]", variable=name)
                s.scalars[index] = result

            return run_assign
        return self._queue_effect(update)

    def _queue_effect(self, update: QueueOp) -> Effect:
        q = self._queue(update.queue)
        capacity = self.capacities[q]
        args = [self.reader(a) for a in update.args]
        name = update.queue

        if update.op == "add":
            if len(args) != 2:
                raise ModelError(f"{name}.add expects (id, pr)")

            def run_add(s: _Scratch) -> None:
                if len(s.queues[q]) >= capacity:
                    raise ModelError(f"queue {name} overflows capacity {capacity}", queue=name)
                s.queues[q].append((args[0](s), args[1](s)))

            return run_add

        if update.op == "dequeue":

            def run_dequeue(s: _Scratch) -> None:
                if not s.queues[q]:
                    raise ModelError(f"dequeue on empty queue {name}", queue=name)
                s.queues[q].pop(0)

            return run_dequeue

        if update.op == "resort":

            def run_resort(s: _Scratch) -> None:
                s.queues[q].sort(key=lambda r: -r[1])

            return run_resort

        def run_sort_behind_head(s: _Scratch) -> None:
            records = s.queues[q]
            records[1:] = sorted(records[1:], key=lambda r: -r[1])

        return run_sort_behind_head

    def apply(self, state: DiscreteState, effects: list[Effect]) -> DiscreteState:
        if not effects:
            return state
        scratch = _Scratch(state)
        for effect in effects:
            effect(scratch)
        return scratch.freeze()

    def _scalar(self, name: str) -> int:
        try:
            return self.scalar_index[name]
        except KeyError:
            raise ModelError(f"unknown variable {name}") from None

    def _queue(self, name: str) -> int:
        try:
            return self.queue_index[name]
        except KeyError:
            raise ModelError(f"unknown queue {name}") from None
