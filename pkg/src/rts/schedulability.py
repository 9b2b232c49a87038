"""
Worst-case response times read off a core network explored for one hyperperiod
"""

import structlog
from pydantic import BaseModel, Field

from src.abstraction.reference import with_reference
from src.automata.model import ClockConstraint, Network
from src.engine import BuildOptions, build_zone_graph, query_extremum, query_reachable
from src.engine.formula import at, clocks
from src.rts.generator import task_automaton_id
from src.rts.model import END, RtsSpec

logger = structlog.get_logger(__name__)


class TaskResponse(BaseModel):
    task: str
    period: int
    wcrt: int | None = Field(None, description="Latest completion relative to activation; None if never completed")
    deadline_miss: bool = False

    @property
    def schedulable(self) -> bool:
        return not self.deadline_miss and self.wcrt is not None and self.wcrt <= self.period


class SchedulabilityReport(BaseModel):
    core: str
    hyperperiod: int
    tasks: list[TaskResponse]
    states: int = Field(0, description="Stored symbolic states")

    @property
    def schedulable(self) -> bool:
        return all(t.schedulable for t in self.tasks)


def check_schedulability(
    n: Network, r: RtsSpec, c: str, options: BuildOptions | None = None
) -> SchedulabilityReport:
    """WCRT of every task of core c as sup of its activation clock at end"""
    hp = r.hyperperiod(c)
    graph = build_zone_graph(with_reference(n, hp), options=options)
    responses = []
    for task in r.partition(c):
        automaton = task_automaton_id(task.name)
        x = f"{automaton}.x"
        wcrt = query_extremum(graph, at(automaton, END), x, "sup")
        # a job still pending past its period shows up in a busy location
        late = ClockConstraint(left=x, op=">", bound=task.period)
        busy = [loc.id for loc in n.automaton(automaton).locations if loc.id not in ("wait", "start")]
        missed = any(query_reachable(graph, at(automaton, loc) & clocks(late)) for loc in busy)
        responses.append(
            TaskResponse(task=task.name, period=task.period, wcrt=wcrt.value, deadline_miss=missed)
        )
    report = SchedulabilityReport(core=c, hyperperiod=hp, tasks=responses, states=graph.stats.stored)
    logger.info(
        "schedulability_checked",
        core=c,
        schedulable=report.schedulable,
        wcrt={t.task: t.wcrt for t in responses},
    )
    return report
