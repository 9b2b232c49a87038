"""Run manifest written next to the artifacts of ``abstract`` and ``bound``"""

import hashlib
import json
import time
from collections.abc import Iterator
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path

from pydantic import BaseModel, Field

from src import __version__


def sha256_of(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class StageRecord(BaseModel):
    name: str
    seconds: float = Field(0.0, ge=0.0)
    states: int = Field(0, ge=0, description="States stored by the stage's explorations")


class RunManifest(BaseModel):
    """Provenance of one run"""

    tool_version: str = __version__
    created_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    command: str
    inputs: dict[str, str] = Field(default_factory=dict, description="File name to SHA-256 digest")
    stages: list[StageRecord] = Field(default_factory=list)
    warnings: list[str] = Field(default_factory=list)
    disclaimer: str | None = None

    def add_input(self, path: Path | None) -> None:
        if path is not None:
            self.inputs[path.name] = sha256_of(path)

    @contextmanager
    def stage(self, name: str) -> Iterator[StageRecord]:
        """Time a stage; the caller fills in the state count"""
        record = StageRecord(name=name)
        started = time.perf_counter()
        try:
            yield record
        finally:
            record.seconds = round(time.perf_counter() - started, 6)
            self.stages.append(record)

    def save(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.model_dump(mode="json"), indent=2) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: Path) -> "RunManifest":
        return cls.model_validate_json(path.read_text(encoding="utf-8"))
