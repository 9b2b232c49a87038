"""
Exact absolute production intervals of the first event of every producing segment

One zone graph is built per core, bounded at the hyperperiod by the Ref
automaton. Each producing segment is then queried once over the whole
hyperperiod and once per period of its task; a period is identified by the
activation instant of the job, Ref.x - TA.x == (k - 1) * P.
"""

import json
import time
from concurrent.futures import ProcessPoolExecutor

import structlog
from pydantic import BaseModel, Field

from src.abstraction.events import EventSpec
from src.abstraction.reference import REF_CLOCK, with_reference
from src.automata.model import ClockConstraint, Network
from src.engine import BuildOptions, IntervalSet, build_zone_graph, query_bounds
from src.engine.formula import StateFormula, at, clocks
from src.errors import GenerationError, UsageError
from src.rts.generator import build_core_network, task_automaton_id
from src.rts.model import RtsSpec, Task

logger = structlog.get_logger(__name__)


class IvEntry(BaseModel):
    """Intervals of the k-th period (1-based) of one producing segment"""

    task: str
    segment: str
    event: str
    period: int = Field(..., ge=1)
    intervals: list[tuple[int, int]]

    @property
    def interval_set(self) -> IntervalSet:
        return IntervalSet.merge(self.intervals)


class SegmentRange(BaseModel):
    """Production instants over the whole hyperperiod, before grouping"""

    task: str
    segment: str
    event: str
    intervals: list[tuple[int, int]]


class IvTable(BaseModel):
    core: str | None = None
    hyperperiod: int | None = None
    entries: list[IvEntry] = Field(default_factory=list)
    ranges: list[SegmentRange] = Field(default_factory=list)
    states: int = Field(0, description="Symbolic states stored while computing the table")
    seconds: float = 0.0

    def get(self, segment: str, event: str, k: int) -> IntervalSet:
        for entry in self.entries:
            if (entry.segment, entry.event, entry.period) == (segment, event, k):
                return entry.interval_set
        raise KeyError(f"Iv({segment},{event},{k})")

    def periods(self, segment: str) -> int:
        return max((e.period for e in self.entries if e.segment == segment), default=0)

    def coarse(self) -> "IvTable":
        """The same table with every period reduced to the hull of its intervals"""
        entries = [
            entry.model_copy(update={"intervals": list(entry.interval_set.hull())}) for entry in self.entries
        ]
        return self.model_copy(update={"entries": entries})

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "IvTable":
        return cls.model_validate_json(text)


def producing_task(r: RtsSpec, e: EventSpec, core: str) -> Task:
    tasks = [r.task(name) for name in e.producing_tasks() if r.task(name).affinity == core]
    if len(tasks) != 1:
        raise UsageError(f"core {core} must host exactly one producing task, found {len(tasks)}", core=core)
    return tasks[0]


def _production(automaton: str, segment: str, lb: int, rb: int) -> StateFormula:
    y = f"{automaton}.y"
    return at(automaton, segment) & clocks(
        ClockConstraint(left=y, op=">=", bound=lb),
        ClockConstraint(left=y, op="<=", bound=rb),
    )


def compute_exact_intervals(
    r: RtsSpec,
    e: EventSpec,
    core: str,
    network: Network | None = None,
    options: BuildOptions | None = None,
) -> IvTable:
    """Iv table of the producing task of core, from one exploration of N_core || Ref"""
    task = producing_task(r, e, core)
    hp = r.hyperperiod(core)
    automaton = task_automaton_id(task.name)
    started = time.perf_counter()
    net = with_reference(network or build_core_network(r, core), hp)
    graph = build_zone_graph(net, options=options)

    table = IvTable(core=core, hyperperiod=hp, states=graph.stats.stored)
    for producer in e.producers_of(task):
        first = producer.first
        produced = _production(automaton, producer.segment, first.lb, first.rb)
        overall = query_bounds(graph, produced, REF_CLOCK)
        table.ranges.append(
            SegmentRange(task=task.name, segment=producer.segment, event=first.event, intervals=list(overall))
        )
        for k in range(1, hp // task.period + 1):
            anchor = ClockConstraint(
                left=REF_CLOCK, right=f"{automaton}.x", op="==", bound=(k - 1) * task.period
            )
            found = query_bounds(graph, produced & clocks(anchor), REF_CLOCK)
            if not found:
                raise GenerationError(
                    f"{producer.segment} cannot produce {first.event} in period {k} of {task.name}",
                    core=core,
                    segment=producer.segment,
                    period=k,
                )
            table.entries.append(
                IvEntry(task=task.name, segment=producer.segment, event=first.event, period=k, intervals=list(found))
            )
            logger.debug(
                "period_grouped",
                core=core,
                segment=producer.segment,
                first_event=first.event,
                period=k,
                intervals=str(found),
            )
    table.seconds = time.perf_counter() - started
    logger.info("intervals_computed", core=core, task=task.name, states=table.states, seconds=round(table.seconds, 3))
    return table


def _compute_core(args: tuple) -> IvTable:
    return compute_exact_intervals(*args)


def compute_all_intervals(
    r: RtsSpec,
    e: EventSpec,
    networks: dict[str, Network] | None = None,
    options: BuildOptions | None = None,
    jobs: int = 1,
) -> dict[str, IvTable]:
    """Tables of every producing core, up to ``jobs`` explorations at a time"""
    cores = sorted({r.task(name).affinity for name in e.producing_tasks()}, key=r.cores.index)
    work = [(r, e, c, (networks or {}).get(c), options) for c in cores]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(work))) as pool:
            tables = list(pool.map(_compute_core, work))
    else:
        tables = [_compute_core(item) for item in work]
    return dict(zip(cores, tables, strict=True))


def tables_to_json(tables: dict[str, IvTable]) -> str:
    """``intervals.json``: the tables of all producing cores keyed by core, without measurements"""
    payload = {core: table.model_dump(mode="json", exclude={"seconds", "states"}) for core, table in tables.items()}
    return json.dumps(payload, indent=2) + "\n"


def tables_from_json(text: str) -> dict[str, IvTable]:
    return {core: IvTable.model_validate(data) for core, data in json.loads(text).items()}
