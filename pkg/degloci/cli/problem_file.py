"""The line-oriented problem file format.

::

    # unit sphere, polar sample points
    vars X1 X2 X3
    eq X1^2+X2^2+X3^2-1
    ineq X1*X2*X3
    F[1][1] = X1
    a 1 2 3
    task solve
    seed 7
    prime 1000003
    G[1] = X1^2-1
    point 1 0 0
    level 2

Every line is one statement; ``#`` starts a comment. ``eq`` and ``a`` may
repeat, each adding one equation or one row of a. A trailing ``;`` and an
``=`` after the keyword are accepted, as is the bracketed form
``a = [[1,2,3],[2,1,3]]``; ``degeneracy`` names the ``solve`` task.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from degloci.circuit import CircuitBuilder, PolynomialParser
from degloci.errors import ParseError

TASKS = ("solve", "polar", "fiber", "homotopy", "member")
TASK_ALIASES = {"degeneracy": "solve"}

_ROW = re.compile(r"\[([^\[\]]*)\]")
_ENTRY = re.compile(r"^F\[(\d+)\]\[(\d+)\]\s*=\s*")
_SECOND = re.compile(r"^G\[(\d+)\]\s*=\s*")
_KEYWORD = re.compile(r"^([A-Za-z]+)\b\s*")


@dataclass(frozen=True)
class Expression:
    text: str
    line: int
    column: int


@dataclass
class ProblemFile:
    variables: tuple[str, ...] = ()
    equations: list[Expression] = field(default_factory=list)
    inequation: Optional[Expression] = None
    entries: dict[tuple[int, int], Expression] = field(default_factory=dict)
    second: dict[int, Expression] = field(default_factory=dict)
    a: list[tuple] = field(default_factory=list)
    task: str = "solve"
    seed: Optional[int] = None
    prime: Optional[int] = None
    point: Optional[tuple] = None
    level: Optional[int] = None

    def matrix(self) -> list[list[Expression]]:
        """Entries of F as a dense p x s array; every position must be given."""
        if not self.entries:
            return []
        p = max(k for k, _ in self.entries)
        s = max(l for _, l in self.entries)
        rows = []
        for k in range(1, p + 1):
            row = []
            for l in range(1, s + 1):
                if (k, l) not in self.entries:
                    raise ParseError(f"entry F[{k}][{l}] is missing")
                row.append(self.entries[k, l])
            rows.append(row)
        return rows

    def second_map(self) -> list[Expression]:
        n = len(self.second)
        if sorted(self.second) != list(range(1, n + 1)):
            raise ParseError("G[k] must be given for k = 1..n without gaps")
        return [self.second[k] for k in range(1, n + 1)]

    def parse_into(self, builder: CircuitBuilder, expression: Expression) -> int:
        parser = PolynomialParser(builder, self.variables)
        return parser.parse(expression.text, expression.line, expression.column)


def _numbers(text: str, line: int, column: int, kind=Fraction) -> tuple:
    values = []
    for match in re.finditer(r"[^\s,]+", text):
        try:
            values.append(kind(match.group()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a number: {match.group()!r}", line, column + match.start()) from None
    return tuple(values)


def _single(text: str, line: int, column: int, kind=int):
    values = _numbers(text, line, column, kind)
    if len(values) != 1:
        raise ParseError("expected exactly one value", line, column)
    return values[0]


def _rows(text: str, line: int, column: int) -> list[tuple]:
    """One row of a, or every ``[...]`` group of the bracketed form."""
    if not text.lstrip().startswith("["):
        return [_numbers(text, line, column)]
    rows = [_numbers(m.group(1), line, column + m.start(1)) for m in _ROW.finditer(text)]
    if not rows:
        raise ParseError("expected rows in brackets", line, column)
    return rows


def task_name(text: str, line: int = 1, column: int = 1) -> str:
    name = TASK_ALIASES.get(text, text)
    if name not in TASKS:
        raise ParseError(f"unknown task {text!r}, expected one of {', '.join(TASKS)}", line, column)
    return name


def parse_problem_file(text: str) -> ProblemFile:
    problem = ProblemFile()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.endswith(";"):
            line = line[:-1].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        start = len(line) - len(stripped) + 1
        entry = _ENTRY.match(stripped)
        if entry:
            key = (int(entry.group(1)), int(entry.group(2)))
            if 0 in key:
                raise ParseError("matrix indices start at 1", number, start)
            if key in problem.entries:
                raise ParseError(f"entry F[{key[0]}][{key[1]}] given twice", number, start)
            problem.entries[key] = Expression(stripped[entry.end() :], number, start + entry.end())
            continue
        second = _SECOND.match(stripped)
        if second:
            k = int(second.group(1))
            if k == 0 or k in problem.second:
                raise ParseError(f"bad or repeated index G[{k}]", number, start)
            problem.second[k] = Expression(stripped[second.end() :], number, start + second.end())
            continue
        keyword = _KEYWORD.match(stripped)
        if not keyword:
            raise ParseError(f"cannot read statement {stripped!r}", number, start)
        name = keyword.group(1)
        rest = stripped[keyword.end() :]
        column = start + keyword.end()
        if rest.startswith("="):
            skipped = len(rest) - len(rest[1:].lstrip())
            rest, column = rest[skipped:], column + skipped
        if name == "vars":
            names = tuple(rest.replace(",", " ").split())
            if not names or len(set(names)) != len(names):
                raise ParseError("vars needs distinct variable names", number, column)
            problem.variables = names
        elif name == "eq":
            problem.equations.append(Expression(rest, number, column))
        elif name == "ineq":
            problem.inequation = Expression(rest, number, column)
        elif name == "a":
            problem.a.extend(_rows(rest, number, column))
        elif name == "task":
            problem.task = task_name(rest.strip(), number, column)
        elif name == "seed":
            problem.seed = _single(rest, number, column)
        elif name == "prime":
            problem.prime = _single(rest, number, column)
        elif name == "point":
            try:
                problem.point = _numbers(rest, number, column)
            except ParseError as exc:
                # algebraic points are only reachable through the library
                raise ParseError(
                    f"point coordinates must be rational numbers ({exc.message})", exc.line, exc.column
                ) from None
        elif name == "level":
            problem.level = _single(rest, number, column)
        else:
            raise ParseError(f"unknown statement {name!r}", number, start)
    if not problem.variables:
        raise ParseError("missing vars statement")
    return problem


def parse_matrix(text: str) -> tuple[tuple, ...]:
    """Rows of rationals, one row per non-empty line."""
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            rows.append(_numbers(line, number, 1))
    return tuple(rows)
