"""
Exception hierarchy and diagnostics shared by every stage of the pipeline.

Validation operations return ``Diagnostic`` values; stages raise the
exceptions below and the CLI maps them to exit codes.
"""

from enum import Enum
from typing import Any

from pydantic import BaseModel, Field


class Severity(str, Enum):
    """Diagnostic severity levels"""
    ERROR = "error"
    WARNING = "warning"


class Diagnostic(BaseModel):
    """One finding of a validation pass, addressed by a JSON pointer"""

    path: str = Field(default="", description="JSON pointer of the offending element")
    message: str
    severity: Severity = Severity.ERROR

    @property
    def is_error(self) -> bool:
        return self.severity == Severity.ERROR

    def __str__(self) -> str:
        where = self.path or "/"
        return f"{self.severity.value}: {where}: {self.message}"


def errors_only(diagnostics: list[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diagnostics if d.is_error]


class ExactBoundsError(Exception):
    """Base class of all toolkit errors"""

    exit_code = 1

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context


class InputError(ExactBoundsError):
    """Schema or cross-reference problem in user inputs"""

    def __init__(self, message: str, diagnostics: list[Diagnostic] | None = None, **context: Any):
        super().__init__(message, **context)
        self.diagnostics = diagnostics or []

    def __str__(self) -> str:
        if not self.diagnostics:
            return self.message
        lines = [self.message] + [f"  {d}" for d in self.diagnostics]
        return "\n".join(lines)


class ModelError(ExactBoundsError):
    """The model itself is broken: bad initial state, range or capacity violation"""

    def __init__(self, message: str, trace: list[str] | None = None, **context: Any):
        super().__init__(message, **context)
        self.trace = trace or []


class ModelClassError(ExactBoundsError):
    """The model lies outside the supported class (open constraints where closed are required)"""


class UsageError(ExactBoundsError):
    """An operation was called outside its precondition"""


class GenerationError(ExactBoundsError):
    """A network or abstraction cannot be generated from the given inputs"""


class ResourceError(ExactBoundsError):
    """Exploration budget exhausted"""

    exit_code = 2
