"""
Discrete expression language

Guards and updates over bounded integers and (task id, priority) queues,
encoded as a small JSON AST so networks stay serializable.
"""

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

CompareOp = Literal["==", "!=", "<", "<=", ">", ">="]


class _Node(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class Const(_Node):
    kind: Literal["const"] = "const"
    value: int

    def __str__(self) -> str:
        return str(self.value)


class Var(_Node):
    kind: Literal["var"] = "var"
    name: str

    def __str__(self) -> str:
        return self.name


class QueueRead(_Node):
    """head() id, len(), or the id/pr field of the record at index (-1 when absent)"""

    kind: Literal["queue"] = "queue"
    queue: str
    read: Literal["head", "len", "id", "pr"]
    index: int = Field(0, ge=0)

    def __str__(self) -> str:
        if self.read in ("head", "len"):
            return f"{self.queue}.{self.read}()"
        return f"{self.queue}[{self.index}].{self.read}"


class BinOp(_Node):
    kind: Literal["binop"] = "binop"
    op: Literal["+", "-", "*"]
    left: "Expr"
    right: "Expr"

    def __str__(self) -> str:
        return f"({self.left} {self.op} {self.right})"


Expr = Annotated[Union[Const, Var, QueueRead, BinOp], Field(discriminator="kind")]
BinOp.model_rebuild()


class Comparison(_Node):
    left: Expr
    op: CompareOp
    right: Expr

    def __str__(self) -> str:
        return f"{self.left} {self.op} {self.right}"


class Assign(_Node):
    kind: Literal["assign"] = "assign"
    var: str
    value: Expr

    def __str__(self) -> str:
        return f"{self.var} := {self.value}"


class QueueOp(_Node):
    """add(id, pr), dequeue(), resort() or sort_behind_head() on a queue"""

    kind: Literal["queue_op"] = "queue_op"
    queue: str
    op: Literal["add", "dequeue", "resort", "sort_behind_head"]
    args: list[Expr] = Field(default_factory=list)

    def __str__(self) -> str:
        return f"{self.queue}.{self.op}({', '.join(str(a) for a in self.args)})"


Update = Annotated[Union[Assign, QueueOp], Field(discriminator="kind")]


# builders used by the generators

def const(value: int) -> Const:
    return Const(value=value)


def var(name: str) -> Var:
    return Var(name=name)


def head(queue: str) -> QueueRead:
    return QueueRead(queue=queue, read="head")


def length(queue: str) -> QueueRead:
    return QueueRead(queue=queue, read="len")


def priority_at(queue: str, index: int) -> QueueRead:
    return QueueRead(queue=queue, read="pr", index=index)


def compare(left: Expr | int, op: CompareOp, right: Expr | int) -> Comparison:
    lhs = const(left) if isinstance(left, int) else left
    rhs = const(right) if isinstance(right, int) else right
    return Comparison(left=lhs, op=op, right=rhs)


def assign(name: str, value: Expr | int) -> Assign:
    return Assign(var=name, value=const(value) if isinstance(value, int) else value)


def queue_op(queue: str, op: str, *args: int) -> QueueOp:
    return QueueOp(queue=queue, op=op, args=[const(a) for a in args])
