"""
Declarative real-time system: tasks made of non-preemptible segments,
partitioned on cores and scheduled by fixed priority
"""

import math
import re
from functools import cached_property
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from src.errors import Diagnostic, Severity

ACT = "act"
END = "end"
_IDENTIFIER = re.compile(r"^[A-Za-z_]\w*$")


class _Input(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class Segment(_Input):
    name: str
    bcet: int = Field(..., gt=0, description="Best-case execution time")
    wcet: int = Field(..., gt=0, description="Worst-case execution time, blocking included")


class TaskFsm(_Input):
    transitions: list[tuple[str, str]]


class Task(_Input):
    name: str
    period: int = Field(..., gt=0, description="Period and implicit deadline")
    priority: int = Field(..., description="Higher number means higher priority")
    affinity: str
    segments: list[Segment]
    fsm: TaskFsm

    def segment(self, name: str) -> Segment:
        for segment in self.segments:
            if segment.name == name:
                return segment
        raise KeyError(f"{self.name}.{name}")

    def segment_names(self) -> list[str]:
        return [s.name for s in self.segments]

    def exits(self, state: str) -> list[str]:
        """Successor states in segment declaration order, end last"""
        order = {name: i for i, name in enumerate(self.segment_names())}
        order[END] = len(order)
        targets = dict.fromkeys(t for s, t in self.fsm.transitions if s == state)
        return sorted(targets, key=lambda t: order.get(t, len(order) + 1))

    def has_successor_segment(self, segment: str) -> bool:
        return any(t != END for t in self.exits(segment))


class RtsSpec(_Input):
    cores: list[str]
    tasks: list[Task]
    time_unit: str = "tu"

    def task(self, name: str) -> Task:
        for task in self.tasks:
            if task.name == name:
                return task
        raise KeyError(name)

    def partition(self, core: str) -> list[Task]:
        return [t for t in self.tasks if t.affinity == core]

    @cached_property
    def hyperperiods(self) -> dict[str, int]:
        return {
            core: math.lcm(*(t.period for t in self.partition(core)))
            for core in self.cores
            if self.partition(core)
        }

    def hyperperiod(self, core: str) -> int:
        return self.hyperperiods[core]


def _duplicates(names: list[str]) -> set[str]:
    return {n for n in names if names.count(n) > 1}


def _fsm_diagnostics(task: Task, base: str) -> list[Diagnostic]:
    diagnostics: list[Diagnostic] = []
    states = set(task.segment_names()) | {ACT, END}
    for index, (source, target) in enumerate(task.fsm.transitions):
        path = f"{base}/fsm/transitions/{index}"
        for state in (source, target):
            if state not in states:
                diagnostics.append(Diagnostic(path=path, message=f"unknown state {state}"))
        if target == ACT:
            diagnostics.append(Diagnostic(path=path, message="act has no predecessors"))
        if source == END:
            diagnostics.append(Diagnostic(path=path, message="end has no successors"))
    if diagnostics:
        return diagnostics

    successors = {s: task.exits(s) for s in states}
    # reachability from act and co-reachability of end
    reached, stack = {ACT}, [ACT]
    while stack:
        for nxt in successors[stack.pop()]:
            if nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    ending = {END}
    changed = True
    while changed:
        changed = False
        for state, targets in successors.items():
            if state not in ending and any(t in ending for t in targets):
                ending.add(state)
                changed = True
    for name in task.segment_names():
        if name not in reached or name not in ending:
            diagnostics.append(
                Diagnostic(path=f"{base}/fsm", message=f"segment {name} is not on a path from act to end")
            )
    if not successors[ACT]:
        diagnostics.append(Diagnostic(path=f"{base}/fsm", message="act has no successors"))

    # cycle detection by depth-first colouring
    colour: dict[str, int] = {}

    def cyclic(state: str) -> bool:
        colour[state] = 1
        for nxt in successors[state]:
            if colour.get(nxt) == 1 or (nxt not in colour and cyclic(nxt)):
                return True
        colour[state] = 2
        return False

    if cyclic(ACT):
        diagnostics.append(Diagnostic(path=f"{base}/fsm", message="segment graph is cyclic"))
    return diagnostics


def validate_rts(r: RtsSpec) -> list[Diagnostic]:
    """Check every structural assumption; hyperperiods are then available on ``r``"""
    diagnostics: list[Diagnostic] = []
    for name in sorted(_duplicates(r.cores)):
        diagnostics.append(Diagnostic(path="/cores", message=f"duplicate core {name}"))
    for name in sorted(_duplicates([t.name for t in r.tasks])):
        diagnostics.append(Diagnostic(path="/tasks", message=f"duplicate task {name}"))

    for t_index, task in enumerate(r.tasks):
        base = f"/tasks/{t_index}"
        if not _IDENTIFIER.match(task.name):
            diagnostics.append(Diagnostic(path=f"{base}/name", message="task names must be identifiers"))
        if task.affinity not in r.cores:
            diagnostics.append(Diagnostic(path=f"{base}/affinity", message=f"undeclared core {task.affinity}"))
        if not task.segments:
            diagnostics.append(Diagnostic(path=f"{base}/segments", message="task has no segment"))
        for name in sorted(_duplicates(task.segment_names())):
            diagnostics.append(Diagnostic(path=f"{base}/segments", message=f"duplicate segment {name}"))
        for s_index, segment in enumerate(task.segments):
            path = f"{base}/segments/{s_index}"
            if segment.name in (ACT, END) or not _IDENTIFIER.match(segment.name):
                diagnostics.append(Diagnostic(path=f"{path}/name", message=f"invalid segment name {segment.name}"))
            if segment.bcet > segment.wcet:
                diagnostics.append(
                    Diagnostic(path=path, message=f"bcet {segment.bcet} exceeds wcet {segment.wcet}")
                )
        diagnostics.extend(_fsm_diagnostics(task, base))

    for core in r.cores:
        partition = r.partition(core)
        if not partition:
            diagnostics.append(
                Diagnostic(path="/cores", message=f"core {core} has no task", severity=Severity.WARNING)
            )
        priorities = [t.priority for t in partition]
        if len(set(priorities)) != len(priorities):
            diagnostics.append(
                Diagnostic(path="/tasks", message=f"priorities on core {core} are not unique")
            )
    return diagnostics


def enumerate_jobs(t: Task) -> list[tuple[str, ...]]:
    """Segment sequences of all maximal act -> end paths, depth first"""
    jobs: list[tuple[str, ...]] = []

    def walk(state: str, prefix: tuple[str, ...]) -> None:
        for nxt in t.exits(state):
            if nxt == END:
                jobs.append(prefix)
            else:
                walk(nxt, prefix + (nxt,))

    walk(ACT, ())
    return jobs


def job_set(r: RtsSpec) -> dict[str, list[tuple[str, ...]]]:
    return {t.name: enumerate_jobs(t) for t in r.tasks}


def load_rts(path: Path) -> RtsSpec:
    return RtsSpec.model_validate_json(path.read_text(encoding="utf-8"))
