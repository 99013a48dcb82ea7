"""
Expression tree nodes. Nodes are immutable and compare by structure, the source offset is carried along
for diagnostics but is not part of the identity.
"""
import re
from dataclasses import dataclass, field

UNARY_OPS = ("neg", "sqrt", "exp", "log", "sin", "cos", "tanh", "abs")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")

VARIABLE_PATTERN = re.compile(r"^([xy])(0|[1-9]\d*)$")


@dataclass(frozen=True)
class Constant:
    value: float
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Variable:
    name: str
    offset: int = field(default=0, compare=False)

    @property
    def kind(self):
        """
        "x" for a point coordinate, "y" for a direction coordinate.
        """
        return VARIABLE_PATTERN.match(self.name).group(1)

    @property
    def index(self):
        return int(VARIABLE_PATTERN.match(self.name).group(2))


@dataclass(frozen=True)
class Unary:
    op: str
    operand: object
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object
    offset: int = field(default=0, compare=False)
