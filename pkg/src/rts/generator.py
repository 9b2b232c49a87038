"""
Per-core networks N_c = H_c || TA_t for every task t on core c

Each task automaton inserts itself into the core's ready queue at
activation, runs one location per segment once the scheduler releases it,
and may be suspended at segment boundaries when a higher-priority task is
waiting. The scheduler keeps the queue sorted by priority and releases its
head.
"""

from dataclasses import dataclass

import structlog

from src.automata.expressions import (
    Comparison,
    Update,
    assign,
    compare,
    head,
    length,
    priority_at,
    queue_op,
    var,
)
from src.automata.model import (
    Channel,
    ChannelKind,
    Edge,
    Location,
    Network,
    QueueVariable,
    ScalarVariable,
    TimedAutomaton,
    clock_eq,
    clock_ge,
    clock_le,
    emit,
    receive,
)
from src.errors import GenerationError, InputError, errors_only
from src.rts.model import ACT, END, RtsSpec, Task, validate_rts

logger = structlog.get_logger(__name__)


def scheduler_id(core: str) -> str:
    return f"H_{core}"


def task_automaton_id(task: str) -> str:
    return f"TA_{task}"


@dataclass(frozen=True)
class CoreContext:
    """Names shared by the scheduler and task automata of one core"""

    core: str
    tasks: tuple[Task, ...]

    @property
    def ins(self) -> str:
        return f"ins_{self.core}"

    @property
    def cmp(self) -> str:
        return f"cmp_{self.core}"

    @property
    def ter(self) -> str:
        return f"ter_{self.core}"

    @property
    def pre(self) -> str:
        return f"pre_{self.core}"

    @property
    def exe(self) -> str:
        return f"exe_{self.core}"

    @property
    def queue(self) -> str:
        return f"Q_{self.core}"

    @property
    def running(self) -> str:
        return f"run_{self.core}"

    def rel(self, task: Task) -> str:
        return f"rel_{self.core}_{task.name}"

    def task_id(self, task: Task) -> int:
        return [t.name for t in self.tasks].index(task.name)

    def preemptible(self, task: Task) -> bool:
        return any(t.priority > task.priority for t in self.tasks)

    def channels(self) -> list[Channel]:
        # ins over cmp so that simultaneous activations are all queued before sorting;
        # pre over exe so that a pending preemption wins at a segment boundary
        channels = [
            Channel(id=self.ins, kind=ChannelKind.HANDSHAKE, priority=0),
            Channel(id=self.cmp, kind=ChannelKind.BROADCAST, priority=-1),
            Channel(id=self.ter, kind=ChannelKind.HANDSHAKE, priority=0),
            Channel(id=self.pre, kind=ChannelKind.HANDSHAKE, priority=1),
            Channel(id=self.exe, kind=ChannelKind.BROADCAST, priority=0),
        ]
        channels.extend(Channel(id=self.rel(t), kind=ChannelKind.HANDSHAKE) for t in self.tasks)
        return channels


def _choice_variable(task: Task) -> str:
    return f"nx_{task.name}"


def _entry_choices(task: Task, segment: str) -> list[list[Update]]:
    """One update list per exit the job may take after entering segment"""
    exits = task.exits(segment)
    if len(exits) < 2:
        return [[]]
    return [[assign(_choice_variable(task), index)] for index in range(len(exits))]


def _exit_condition(task: Task, segment: str, index: int) -> list[Comparison]:
    if len(task.exits(segment)) < 2:
        return []
    return [compare(var(_choice_variable(task)), "==", index)]


def _branching(task: Task) -> bool:
    return any(len(task.exits(s)) > 1 for s in task.segment_names())


def generate_task_ta(t: Task, core_ctx: CoreContext) -> TimedAutomaton:
    ctx = core_ctx
    tid = ctx.task_id(t)
    insert = [queue_op(ctx.queue, "add", tid, t.priority)]
    preemptible = ctx.preemptible(t)

    locations = [
        Location(id="start", committed=True, initial=True),
        Location(id="wait", invariant=[clock_le("x", t.period)]),
        Location(id=ACT),
    ]
    for segment in t.segments:
        locations.append(Location(id=segment.name, invariant=[clock_le("y", segment.wcet)]))
        if preemptible and t.has_successor_segment(segment.name):
            locations.append(Location(id=f"{segment.name}_pr"))
    locations.append(Location(id=END, committed=True))

    edges = [
        Edge(source="start", target=ACT, sync=emit(ctx.ins), updates=insert),
        Edge(
            source="wait",
            target=ACT,
            guard=[clock_eq("x", t.period)],
            sync=emit(ctx.ins),
            resets=["x"],
            updates=insert,
        ),
    ]
    for first in t.exits(ACT):
        for choice in _entry_choices(t, first):
            edges.append(Edge(source=ACT, target=first, sync=receive(ctx.rel(t)), resets=["y"], updates=choice))

    for segment in t.segments:
        s = segment.name
        done = [clock_ge("y", segment.bcet)]
        suspended = f"{s}_pr"
        for index, nxt in enumerate(t.exits(s)):
            condition = _exit_condition(t, s, index)
            if nxt == END:
                edges.append(Edge(source=s, target=END, guard=done, condition=condition))
                continue
            for choice in _entry_choices(t, nxt):
                edges.append(
                    Edge(
                        source=s,
                        target=nxt,
                        guard=done,
                        condition=condition,
                        sync=emit(ctx.exe),
                        resets=["y"],
                        updates=choice,
                    )
                )
            if preemptible:
                edges.append(
                    Edge(source=s, target=suspended, guard=done, condition=condition, sync=receive(ctx.pre))
                )
                for choice in _entry_choices(t, nxt):
                    edges.append(
                        Edge(
                            source=suspended,
                            target=nxt,
                            condition=condition,
                            sync=receive(ctx.rel(t)),
                            resets=["y"],
                            updates=choice,
                        )
                    )

    finish = [assign(_choice_variable(t), 0)] if _branching(t) else []
    edges.append(Edge(source=END, target="wait", sync=emit(ctx.ter), updates=finish))
    return TimedAutomaton(id=task_automaton_id(t.name), clocks=["x", "y"], locations=locations, edges=edges)


def _release_edges(ctx: CoreContext, source: str) -> list[Edge]:
    edges = [
        Edge(
            source=source,
            target="wait",
            condition=[compare(head(ctx.queue), "==", ctx.task_id(t))],
            sync=emit(ctx.rel(t)),
            updates=[assign(ctx.running, 1)],
        )
        for t in ctx.tasks
    ]
    edges.append(Edge(source=source, target="wait", condition=[compare(length(ctx.queue), "==", 0)]))
    return edges


def generate_scheduler_ta(c: str, tasks: list[Task]) -> TimedAutomaton:
    foreign = [t.name for t in tasks if t.affinity != c]
    if foreign:
        raise GenerationError(f"tasks {foreign} are not mapped on core {c}", core=c)
    priorities = [t.priority for t in tasks]
    if len(set(priorities)) != len(priorities):
        raise GenerationError(f"duplicate priorities on core {c}", core=c)
    ctx = CoreContext(core=c, tasks=tuple(tasks))
    running = var(ctx.running)
    size = length(ctx.queue)
    busy = compare(running, "==", 1)
    idle = compare(running, "==", 0)

    locations = [
        Location(id="wait", initial=True),
        Location(id="insert", committed=True),
        Location(id="decide", committed=True),
        Location(id="release", committed=True),
        Location(id="preempt"),
        Location(id="update", committed=True),
        Location(id="release2", committed=True),
    ]
    edges = [
        Edge(source="wait", target="insert", sync=receive(ctx.ins)),
        Edge(source="insert", target="insert", sync=receive(ctx.ins)),
        Edge(
            source="insert",
            target="decide",
            condition=[busy],
            sync=emit(ctx.cmp),
            updates=[queue_op(ctx.queue, "sort_behind_head")],
        ),
        Edge(
            source="insert",
            target="decide",
            condition=[idle],
            sync=emit(ctx.cmp),
            updates=[queue_op(ctx.queue, "resort")],
        ),
        Edge(source="decide", target="release", condition=[idle, compare(size, ">", 0)]),
        Edge(source="decide", target="wait", condition=[idle, compare(size, "==", 0)]),
        Edge(source="decide", target="wait", condition=[busy, compare(size, "<", 2)]),
        Edge(
            source="decide",
            target="wait",
            condition=[
                busy,
                compare(size, ">=", 2),
                compare(priority_at(ctx.queue, 0), ">=", priority_at(ctx.queue, 1)),
            ],
        ),
        Edge(
            source="decide",
            target="preempt",
            condition=[
                busy,
                compare(size, ">=", 2),
                compare(priority_at(ctx.queue, 0), "<", priority_at(ctx.queue, 1)),
            ],
        ),
        *[e for e in _release_edges(ctx, "release") if e.sync is not None],
        Edge(
            source="wait",
            target="update",
            sync=receive(ctx.ter),
            updates=[queue_op(ctx.queue, "dequeue"), assign(ctx.running, 0)],
        ),
        *_release_edges(ctx, "update"),
        Edge(source="preempt", target="insert", sync=receive(ctx.ins)),
        Edge(
            source="preempt",
            target="release2",
            sync=receive(ctx.ter),
            updates=[queue_op(ctx.queue, "dequeue"), assign(ctx.running, 0)],
        ),
        Edge(
            source="preempt",
            target="release2",
            sync=emit(ctx.pre),
            updates=[queue_op(ctx.queue, "resort"), assign(ctx.running, 0)],
        ),
        *_release_edges(ctx, "release2"),
    ]
    return TimedAutomaton(id=scheduler_id(c), clocks=[], locations=locations, edges=edges)


def build_core_network(r: RtsSpec, c: str) -> Network:
    problems = errors_only(validate_rts(r))
    if problems:
        raise InputError("invalid real-time system", diagnostics=problems)
    tasks = r.partition(c)
    if not tasks:
        raise GenerationError(f"core {c} has no task", core=c)
    ctx = CoreContext(core=c, tasks=tuple(tasks))
    automata = [generate_scheduler_ta(c, tasks)] + [generate_task_ta(t, ctx) for t in tasks]
    variables = [
        QueueVariable(name=ctx.queue, capacity=len(tasks)),
        ScalarVariable(name=ctx.running, lower=0, upper=1, initial=0),
    ]
    for task in tasks:
        if _branching(task):
            widest = max(len(task.exits(s)) for s in task.segment_names())
            variables.append(ScalarVariable(name=_choice_variable(task), lower=0, upper=widest - 1))
    logger.debug("core_network_built", core=c, tasks=[t.name for t in tasks])
    return Network(automata=automata, channels=ctx.channels(), variables=variables)


__all__ = [
    "CoreContext",
    "build_core_network",
    "generate_scheduler_ta",
    "generate_task_ta",
    "scheduler_id",
    "task_automaton_id",
]
