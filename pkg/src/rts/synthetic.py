"""
Synthetic systems for property tests and the stress fixture

Generated systems use harmonic periods and keep the worst-case demand of one
instance of every task on a core within the shortest period, which makes
them schedulable under the limited-preemption scheduler.
"""

import random

from src.abstraction.events import Emission, EventSpec, Producer
from src.rts.model import ACT, END, RtsSpec, Segment, Task, TaskFsm, enumerate_jobs

NS_PER_MS = 1_000_000


def _worst_demand(task: Task) -> int:
    return max(sum(task.segment(s).wcet for s in job) for job in enumerate_jobs(task))


def _fsm(names: list[str], branching: bool) -> TaskFsm:
    if not branching or len(names) < 2:
        chain = [ACT, *names, END]
        return TaskFsm(transitions=list(zip(chain, chain[1:])))
    first, second, *rest = names
    tail = [*rest, END]
    transitions = [(ACT, first), (ACT, second), (first, tail[0]), (second, tail[0])]
    transitions += list(zip(tail, tail[1:]))
    return TaskFsm(transitions=transitions)


def _emissions(rng: random.Random, wcet: int, events: list[str]) -> list[Emission]:
    emitted: list[Emission] = []
    lb = rb = 0
    for event in events:
        lb = rng.randint(lb, min(rb if emitted else wcet, wcet))
        rb = rng.randint(max(lb, rb), wcet)
        emitted.append(Emission(event=event, lb=lb, rb=rb))
    return emitted


def random_system(
    rng: random.Random,
    cores: int = 2,
    max_tasks: int = 3,
    max_segments: int = 3,
    max_constant: int = 10,
) -> tuple[RtsSpec, EventSpec]:
    """A schedulable system with one producing task per core"""
    core_ids = [f"c{i + 1}" for i in range(cores)]
    base = rng.choice([p for p in (4, 5) if 2 * p <= max_constant] or [max_constant])
    tasks: list[Task] = []
    producers: list[Producer] = []
    events: list[str] = []
    segment_count = 0

    for core in core_ids:
        count = rng.randint(1, max_tasks)
        priorities = rng.sample(range(count), count)
        periods = [rng.choice([base, 2 * base]) for _ in range(count)]
        budget = min(periods)
        core_tasks: list[Task] = []
        for k in range(count):
            n_segments = rng.randint(1, max_segments)
            names = [f"s{segment_count + i}" for i in range(n_segments)]
            segment_count += n_segments
            segments = []
            for name in names:
                wcet = rng.randint(1, 3)
                segments.append(Segment(name=name, bcet=rng.randint(1, wcet), wcet=wcet))
            task = Task(
                name=f"t{len(tasks) + len(core_tasks) + 1}",
                period=periods[k],
                priority=priorities[k],
                affinity=core,
                segments=segments,
                fsm=_fsm(names, branching=rng.random() < 0.4),
            )
            while _worst_demand(task) + sum(_worst_demand(t) for t in core_tasks) > budget:
                shrunk = [s.model_copy(update={"wcet": max(1, s.wcet - 1), "bcet": 1}) for s in task.segments]
                if shrunk == task.segments:
                    break
                task = task.model_copy(update={"segments": shrunk})
            if _worst_demand(task) + sum(_worst_demand(t) for t in core_tasks) > budget:
                break
            core_tasks.append(task)

        producer = rng.choice(core_tasks)
        names = [f"e_{core}_{i}" for i in range(rng.choice([1, 1, 2]))]
        events.extend(names)
        heads = producer.exits(ACT)
        chosen = heads if len(heads) > 1 else [rng.choice(enumerate_jobs(producer)[0])]
        for segment in chosen:
            emits = _emissions(rng, producer.segment(segment).wcet, names)
            producers.append(Producer(task=producer.name, segment=segment, emits=emits))
        tasks.extend(core_tasks)

    return RtsSpec(cores=core_ids, tasks=tasks), EventSpec(events=events, producers=producers)


def stress_system(seed: int = 2017) -> tuple[RtsSpec, EventSpec]:
    """Two cores, nine tasks and about a hundred segments with nanosecond constants"""
    rng = random.Random(seed)
    layout = {"c1": [1, 2, 2, 4, 4], "c2": [1, 2, 4, 4]}
    tasks: list[Task] = []
    producers: list[Producer] = []
    counter = 0
    for core, periods_ms in layout.items():
        budget = NS_PER_MS * min(periods_ms) // len(periods_ms)
        for rank, period_ms in enumerate(periods_ms):
            n_segments = 11 if rank % 2 == 0 else 12
            names = [f"s{counter + i}" for i in range(n_segments)]
            counter += n_segments
            share = budget // n_segments
            segments = []
            for name in names:
                wcet = rng.randint(share // 2, share)
                segments.append(Segment(name=name, bcet=rng.randint(wcet // 2, wcet), wcet=wcet))
            task = Task(
                name=f"t{len(tasks) + 1}",
                period=period_ms * NS_PER_MS,
                priority=len(periods_ms) - rank,
                affinity=core,
                segments=segments,
                fsm=_fsm(names, branching=rank == 3),
            )
            tasks.append(task)
            if rank == 1:
                segment = task.segments[0]
                event = f"e_{core}"
                emits = [Emission(event=event, lb=segment.bcet // 2, rb=segment.bcet)]
                producers.append(Producer(task=task.name, segment=segment.name, emits=emits))
    events = [p.emits[0].event for p in producers]
    return RtsSpec(cores=list(layout), tasks=tasks, time_unit="ns"), EventSpec(events=events, producers=producers)
