"""
State formulas: conjunctions of location, discrete and clock atoms
"""

import re
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from src.automata.expressions import Comparison, compare, var
from src.automata.model import ClockConstraint
from src.errors import InputError


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class LocationAtom(_Frozen):
    kind: Literal["location"] = "location"
    automaton: str
    location: str

    def __str__(self) -> str:
        return f"{self.automaton}.{self.location}"


class ClockAtom(_Frozen):
    """Constraint over qualified clock names"""

    kind: Literal["clock"] = "clock"
    constraint: ClockConstraint

    def __str__(self) -> str:
        return str(self.constraint)


class DataAtom(_Frozen):
    kind: Literal["data"] = "data"
    comparison: Comparison

    def __str__(self) -> str:
        return str(self.comparison)


FormulaAtom = Annotated[Union[LocationAtom, ClockAtom, DataAtom], Field(discriminator="kind")]


class StateFormula(_Frozen):
    atoms: list[FormulaAtom] = Field(default_factory=list)
    never: bool = Field(False, description="The constant false formula")

    def __and__(self, other: "StateFormula") -> "StateFormula":
        return StateFormula(atoms=[*self.atoms, *other.atoms], never=self.never or other.never)

    def clock_atoms(self) -> list[ClockConstraint]:
        return [a.constraint for a in self.atoms if isinstance(a, ClockAtom)]

    def __str__(self) -> str:
        if self.never:
            return "false"
        return " && ".join(str(a) for a in self.atoms) or "true"


def at(automaton: str, location: str) -> StateFormula:
    return StateFormula(atoms=[LocationAtom(automaton=automaton, location=location)])


def clocks(*constraints: ClockConstraint) -> StateFormula:
    return StateFormula(atoms=[ClockAtom(constraint=c) for c in constraints])


FALSE = StateFormula(never=True)
TRUE = StateFormula()

_NAME = r"[A-Za-z_]\w*(?:\.\w+)?"
_TERM = rf"{_NAME}(?:\s*-\s*{_NAME})?"
_OP = r"<=|>=|==|!=|<|>"
_FLIP = {"<": ">", "<=": ">=", ">": "<", ">=": "<=", "==": "==", "!=": "!="}

_LOCATION = re.compile(rf"^([A-Za-z_]\w*)\.(\w+)$")
_CHAIN = re.compile(rf"^(-?\d+)\s*(<=|<)\s*({_TERM})\s*(<=|<)\s*(-?\d+)$")
_LEFT = re.compile(rf"^({_TERM})\s*({_OP})\s*(-?\d+)$")
_RIGHT = re.compile(rf"^(-?\d+)\s*({_OP})\s*({_TERM})$")


def _atom(term: str, op: str, bound: int, text: str) -> FormulaAtom:
    names = [t.strip() for t in term.split("-")]
    if all("." in n for n in names):
        if op == "!=":
            raise InputError(f"'!=' is not a clock constraint: {text}")
        right = names[1] if len(names) == 2 else None
        return ClockAtom(constraint=ClockConstraint(left=names[0], right=right, op=op, bound=bound))
    if len(names) != 1:
        raise InputError(f"difference of discrete variables is not supported: {text}")
    return DataAtom(comparison=compare(var(names[0]), op, bound))


def parse_formula(text: str) -> StateFormula:
    """Parse ``A.loc && 2 <= A.y <= 4 && A.x - B.x < 3 && n == 1``"""
    atoms: list[FormulaAtom] = []
    for raw in re.split(r"&&|\band\b", text):
        part = raw.strip()
        if not part or part == "true":
            continue
        if part == "false":
            return FALSE
        if m := _CHAIN.match(part):
            low, low_op, term, high_op, high = m.groups()
            atoms.append(_atom(term, _FLIP[low_op], int(low), part))
            atoms.append(_atom(term, high_op, int(high), part))
        elif m := _LEFT.match(part):
            atoms.append(_atom(m.group(1), m.group(2), int(m.group(3)), part))
        elif m := _RIGHT.match(part):
            atoms.append(_atom(m.group(3), _FLIP[m.group(2)], int(m.group(1)), part))
        elif m := _LOCATION.match(part):
            atoms.append(LocationAtom(automaton=m.group(1), location=m.group(2)))
        else:
            raise InputError(f"cannot parse formula atom '{part}'")
    return StateFormula(atoms=atoms)
