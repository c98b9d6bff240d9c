"""Boolean expression front-end.

Grammar, lowest precedence first::

    or   := xor ('|' xor)*
    xor  := and ('^' and)*
    and  := not ('&' not)*
    not  := '~' not | atom
    atom := name | '0' | '1' | '(' or ')'

Binary operators associate to the left. Whitespace is ignored.
"""

import re
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from wavepla.channels import MAX_OPERANDS
from wavepla.synthesis.tables import TruthTable


class ExprSyntaxError(ValueError):
    """Malformed expression; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text

    def diagnostic(self) -> str:
        """Two-line rendering with a caret under the offending character."""
        return f"{self.text}\n{' ' * self.position}^ {self.args[0]}"


class UnknownVariableError(ValueError):
    """Expression names a variable missing from the declared list."""

    def __init__(self, name: str, position: int):
        super().__init__(f"Unknown variable {name!r} at position {position}")
        self.name = name
        self.position = position


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Not:
    operand: "BoolExpr"


@dataclass(frozen=True)
class And:
    left: "BoolExpr"
    right: "BoolExpr"


@dataclass(frozen=True)
class Or:
    left: "BoolExpr"
    right: "BoolExpr"


@dataclass(frozen=True)
class Xor:
    left: "BoolExpr"
    right: "BoolExpr"


BoolExpr = Union[Var, Const, Not, And, Or, Xor]

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<const>[0-9]+)|(?P<op>[|^&~()]))")
_BINARY = {"|": Or, "^": Xor, "&": And}


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = set(variables)
        self.tokens = self._tokenize(text)
        self.index = 0

    def _tokenize(self, text: str) -> list[tuple[str, str, int]]:
        tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if match is None:
                start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
                raise ExprSyntaxError(f"Unexpected character {text[start]!r}", start, text)
            kind = match.lastgroup
            tokens.append((kind, match.group(kind), match.start(kind)))
            pos = match.end()
        return tokens

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def error(self, message: str) -> ExprSyntaxError:
        token = self.peek()
        position = token[2] if token is not None else len(self.text)
        found = repr(token[1]) if token is not None else "end of input"
        return ExprSyntaxError(f"{message}, found {found}", position, self.text)

    def parse(self) -> BoolExpr:
        expr = self.binary("|")
        if self.peek() is not None:
            raise self.error("Expected operator")
        return expr

    def binary(self, op: str) -> BoolExpr:
        lower = {"|": "^", "^": "&"}.get(op)
        operand = (lambda: self.binary(lower)) if lower else self.unary
        left = operand()
        while (token := self.peek()) is not None and token[1] == op:
            self.index += 1
            left = _BINARY[op](left, operand())
        return left

    def unary(self) -> BoolExpr:
        token = self.peek()
        if token is not None and token[1] == "~":
            self.index += 1
            return Not(self.unary())
        return self.atom()

    def atom(self) -> BoolExpr:
        token = self.peek()
        if token is None:
            raise self.error("Expected operand")
        kind, value, position = token
        if kind == "name":
            if value not in self.variables:
                raise UnknownVariableError(value, position)
            self.index += 1
            return Var(value)
        if kind == "const":
            if value not in ("0", "1"):
                raise ExprSyntaxError(f"Constant must be 0 or 1, found {value!r}", position, self.text)
            self.index += 1
            return Const(int(value))
        if value == "(":
            self.index += 1
            inner = self.binary("|")
            closing = self.peek()
            if closing is None or closing[1] != ")":
                raise self.error("Expected ')'")
            self.index += 1
            return inner
        raise self.error("Expected operand")


def parse_expr(text: str, variables: Sequence[str]) -> BoolExpr:
    """Parse ``text`` into an expression tree over the declared ``variables``.

    Raises:
        ExprSyntaxError: Malformed text (with the offending position).
        UnknownVariableError: A name outside ``variables``.
    """
    if not text or not text.strip():
        raise ExprSyntaxError("Empty expression", 0, text or "")
    return _Parser(text, variables).parse()


def evaluate(expr: BoolExpr, assignment: Mapping[str, int]) -> int:
    """Evaluate ``expr`` for one assignment of its variables."""
    match expr:
        case Var(name):
            return int(bool(assignment[name]))
        case Const(value):
            return value
        case Not(operand):
            return 1 - evaluate(operand, assignment)
        case And(left, right):
            return evaluate(left, assignment) & evaluate(right, assignment)
        case Or(left, right):
            return evaluate(left, assignment) | evaluate(right, assignment)
        case Xor(left, right):
            return evaluate(left, assignment) ^ evaluate(right, assignment)
    raise TypeError(f"Not an expression node: {expr!r}")


def _evaluate_columns(expr: BoolExpr, columns: Mapping[str, np.ndarray], size: int) -> np.ndarray:
    match expr:
        case Var(name):
            return columns[name]
        case Const(value):
            return np.full(size, bool(value))
        case Not(operand):
            return ~_evaluate_columns(operand, columns, size)
        case And(left, right):
            return _evaluate_columns(left, columns, size) & _evaluate_columns(right, columns, size)
        case Or(left, right):
            return _evaluate_columns(left, columns, size) | _evaluate_columns(right, columns, size)
        case Xor(left, right):
            return _evaluate_columns(left, columns, size) ^ _evaluate_columns(right, columns, size)
    raise TypeError(f"Not an expression node: {expr!r}")


def truth_table(expr: BoolExpr, variables: Sequence[str], name: str = "f") -> TruthTable:
    """Tabulate ``expr`` in channel order; variable j is bound to operand x_j."""
    n = len(variables)
    if n < 1 or n > MAX_OPERANDS:
        raise ValueError(f"Variable count must be in [1, {MAX_OPERANDS}], got {n}")
    if len(set(variables)) != n:
        raise ValueError(f"Duplicate variable names in {list(variables)}")
    size = 2**n
    index = np.arange(size)
    columns = {v: ((index >> (n - j)) & 1).astype(bool) for j, v in enumerate(variables, start=1)}
    return TruthTable(n, _evaluate_columns(expr, columns, size), name=name)


def compile_expr(text: str, variables: Sequence[str], name: str = "f") -> TruthTable:
    """parse_expr followed by truth_table."""
    return truth_table(parse_expr(text, variables), variables, name=name)
