"""Loading and validation of the JSON inputs of every command"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel, ValidationError

from src.abstraction.events import EventSpec, validate_event_spec
from src.bounds.observers import Requirement, validate_requirement
from src.errors import Diagnostic, InputError, errors_only
from src.rts.model import RtsSpec, validate_rts

Model = TypeVar("Model", bound=BaseModel)


def pointer(loc: tuple[int | str, ...]) -> str:
    return "".join(f"/{part}" for part in loc)


def parse_file(model: type[Model], path: Path) -> Model:
    if not path.is_file():
        raise InputError(f"input file not found: {path}", path=str(path))
    try:
        return model.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        diagnostics = [Diagnostic(path=pointer(err["loc"]), message=err["msg"]) for err in e.errors()]
        raise InputError(f"{path}: schema violation", diagnostics=diagnostics, path=str(path)) from None


@dataclass
class ParsedInputs:
    rts: RtsSpec
    events: EventSpec | None = None
    requirement: Requirement | None = None
    warnings: list[Diagnostic] = field(default_factory=list)


def parse_inputs(
    rts_path: Path,
    events_path: Path | None = None,
    requirement_path: Path | None = None,
    force: bool = False,
) -> ParsedInputs:
    """Schema-check and cross-check the inputs, collecting every error before raising"""
    rts = parse_file(RtsSpec, rts_path)
    diagnostics = validate_rts(rts)
    if errors_only(diagnostics):
        raise InputError(f"{rts_path}: invalid system", diagnostics=errors_only(diagnostics))
    parsed = ParsedInputs(rts=rts)

    if events_path is not None:
        parsed.events = parse_file(EventSpec, events_path)
        found = validate_event_spec(rts, parsed.events, force=force)
        if errors_only(found):
            raise InputError(f"{events_path}: invalid event specification", diagnostics=errors_only(found))
        diagnostics.extend(found)

    if requirement_path is not None:
        parsed.requirement = parse_file(Requirement, requirement_path)
        declared = parsed.events.events if parsed.events else None
        found = validate_requirement(parsed.requirement, declared)
        if errors_only(found):
            raise InputError(f"{requirement_path}: invalid requirement", diagnostics=errors_only(found))
        diagnostics.extend(found)

    parsed.warnings = [d for d in diagnostics if not d.is_error]
    return parsed
