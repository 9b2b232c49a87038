"""
Event production declarations and their validation against the task model
"""

from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from src.errors import Diagnostic, Severity
from src.rts.model import RtsSpec, Task, enumerate_jobs

FORCED_DISCLAIMER = (
    "forced mode: some job of a producing task emits no event; "
    "exactness of the abstraction is the user's responsibility"
)


class _Input(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class Emission(_Input):
    """One event emitted while the segment runs, at a time relative to its start"""

    event: str
    lb: int = Field(..., ge=0)
    rb: int = Field(..., ge=0)


class Producer(_Input):
    task: str
    segment: str
    emits: list[Emission] = Field(..., min_length=1)

    @property
    def first(self) -> Emission:
        return self.emits[0]

    @property
    def multi_event(self) -> bool:
        return len(self.emits) > 1


class EventSpec(_Input):
    events: list[str]
    producers: list[Producer]

    def producing_tasks(self) -> list[str]:
        return list(dict.fromkeys(p.task for p in self.producers))

    def producers_of(self, task: Task) -> list[Producer]:
        """Producers of one task in segment declaration order"""
        order = {name: i for i, name in enumerate(task.segment_names())}
        mine = [p for p in self.producers if p.task == task.name]
        return sorted(mine, key=lambda p: order.get(p.segment, len(order)))

    def emitted(self) -> set[str]:
        return {emission.event for p in self.producers for emission in p.emits}


def _producer_diagnostics(r: RtsSpec, e: EventSpec, index: int, producer: Producer) -> list[Diagnostic]:
    base = f"/producers/{index}"
    diagnostics: list[Diagnostic] = []
    try:
        task = r.task(producer.task)
    except KeyError:
        return [Diagnostic(path=f"{base}/task", message=f"unknown task {producer.task}")]
    try:
        segment = task.segment(producer.segment)
    except KeyError:
        return [Diagnostic(path=f"{base}/segment", message=f"unknown segment {producer.segment} of {task.name}")]

    previous = None
    for j, emission in enumerate(producer.emits):
        path = f"{base}/emits/{j}"
        if emission.event not in e.events:
            diagnostics.append(Diagnostic(path=f"{path}/event", message=f"undeclared event {emission.event}"))
        if emission.lb > emission.rb:
            diagnostics.append(Diagnostic(path=path, message=f"empty interval [{emission.lb},{emission.rb}]"))
        if emission.rb > segment.wcet:
            diagnostics.append(
                Diagnostic(path=f"{path}/rb", message=f"rb {emission.rb} exceeds wcet {segment.wcet} of {segment.name}")
            )
        if previous is not None and (emission.lb < previous.lb or emission.rb < previous.rb):
            diagnostics.append(
                Diagnostic(path=path, message="emissions must be ordered: both bounds non-decreasing")
            )
        previous = emission
    events = [emission.event for emission in producer.emits]
    if len(set(events)) != len(events):
        diagnostics.append(Diagnostic(path=f"{base}/emits", message="an event is emitted twice by one segment"))
    return diagnostics


def validate_event_spec(r: RtsSpec, e: EventSpec, force: bool = False) -> list[Diagnostic]:
    """Structural checks of an event declaration; ``force`` downgrades the job-coverage error"""
    diagnostics: list[Diagnostic] = []
    if len(set(e.events)) != len(e.events):
        diagnostics.append(Diagnostic(path="/events", message="duplicate event names"))

    seen: set[tuple[str, str]] = set()
    for index, producer in enumerate(e.producers):
        key = (producer.task, producer.segment)
        if key in seen:
            diagnostics.append(
                Diagnostic(path=f"/producers/{index}", message=f"segment {producer.segment} declared twice")
            )
        seen.add(key)
        diagnostics.extend(_producer_diagnostics(r, e, index, producer))
    if any(d.is_error for d in diagnostics):
        return diagnostics

    tasks = [r.task(name) for name in e.producing_tasks()]
    affinities = [t.affinity for t in tasks]
    for core in sorted({c for c in affinities if affinities.count(c) > 1}):
        names = [t.name for t in tasks if t.affinity == core]
        diagnostics.append(
            Diagnostic(path="/producers", message=f"tasks {names} produce events on the same core {core}")
        )
    if len(set(affinities)) < 2:
        diagnostics.append(Diagnostic(path="/producers", message="events must be produced on at least two cores"))

    for task in tasks:
        producing = {p.segment for p in e.producers_of(task)}
        jobs = enumerate_jobs(task)
        for job in jobs:
            shared = [s for s in job if s in producing]
            if len(shared) > 1:
                diagnostics.append(
                    Diagnostic(path="/producers", message=f"segments {shared} of {task.name} share a job")
                )
        if len(jobs) > 1:
            diagnostics.append(
                Diagnostic(
                    path="/producers",
                    message=f"{task.name} has several jobs; make sure every requirement asks for a bound that exists",
                    severity=Severity.WARNING,
                )
            )
            for job in jobs:
                if not producing.intersection(job):
                    diagnostics.append(
                        Diagnostic(
                            path="/producers",
                            message=f"job {list(job)} of {task.name} produces no event",
                            severity=Severity.WARNING if force else Severity.ERROR,
                        )
                    )
    return diagnostics


def load_event_spec(path: Path) -> EventSpec:
    return EventSpec.model_validate_json(path.read_text(encoding="utf-8"))
