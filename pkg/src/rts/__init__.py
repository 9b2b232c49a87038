"""Real-time systems and their per-core timed-automata networks"""

from src.rts.generator import (
    CoreContext,
    build_core_network,
    generate_scheduler_ta,
    generate_task_ta,
    scheduler_id,
    task_automaton_id,
)
from src.rts.model import (
    RtsSpec,
    Segment,
    Task,
    TaskFsm,
    enumerate_jobs,
    job_set,
    load_rts,
    validate_rts,
)

__all__ = [
    "CoreContext",
    "RtsSpec",
    "Segment",
    "Task",
    "TaskFsm",
    "build_core_network",
    "enumerate_jobs",
    "generate_scheduler_ta",
    "generate_task_ta",
    "job_set",
    "load_rts",
    "scheduler_id",
    "task_automaton_id",
    "validate_rts",
]
