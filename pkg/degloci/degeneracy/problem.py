"""Degeneracy problems and the minors of the stacked matrices T(a_i) = [F; a_i].

Columns are 0-based here. For 1 <= i <= r + 1 the matrix T(a_i) stacks the p
rows of F on the top s - p - i + 1 rows of a, so it has s - i + 1 rows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from degloci.circuit import Circuit
from degloci.config import get_settings
from degloci.errors import ProblemError
from degloci.upoly import linalg
from degloci.upoly.fields import rational


class MinorRole(str, Enum):
    DELTA = "delta"  # p-minor of F on the first p columns
    FULL = "T"  # det T(a_1)
    LEADING = "m"  # m_i, upper-left (s-i)-minor of T(a_(i+1))
    UPPER = "M"  # M_j, (s-i+1)-minors of T(a_i)
    LOWER = "N"  # N_j, (s-i)-minors of T(a_(i+1))


@dataclass(frozen=True)
class MatrixView:
    """Rows of F and of a, restricted to strictly increasing columns."""

    f_rows: tuple[int, ...]
    a_rows: tuple[int, ...]
    columns: tuple[int, ...]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.columns, self.columns[1:])):
            raise ProblemError(f"columns {self.columns} are not strictly increasing")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.f_rows) + len(self.a_rows), len(self.columns)

    def entries(self, f_matrix: Sequence[Sequence], a_matrix: Sequence[Sequence]) -> list[list]:
        rows = [[f_matrix[k][c] for c in self.columns] for k in self.f_rows]
        rows += [[a_matrix[k][c] for c in self.columns] for k in self.a_rows]
        return rows


@dataclass(frozen=True)
class MinorSpec:
    role: MinorRole
    level: int
    view: MatrixView
    index: int = 0  # 1-based column j of M_j and N_j

    def __post_init__(self):
        rows, cols = self.view.shape
        if rows != cols:
            raise ProblemError(f"{self.name} is a {rows}x{cols} view")

    @property
    def name(self) -> str:
        if self.role is MinorRole.DELTA:
            return "delta"
        if self.role is MinorRole.FULL:
            return f"detT{self.level}"
        if self.role is MinorRole.LEADING:
            return f"m{self.level}"
        return f"{self.role.value}{self.level}_{self.index}"


@dataclass(frozen=True)
class TView:
    """T(a_i) with its companion minors."""

    level: int
    matrix: MatrixView
    delta: MinorSpec
    leading: Optional[MinorSpec]
    upper: tuple[MinorSpec, ...]
    lower: tuple[MinorSpec, ...]


@dataclass(frozen=True)
class DegeneracyProblem:
    """V = {G = 0} minus {H = 0} in n-space, the p x s matrix F and the (s-p) x s matrix a."""

    circuit: Circuit
    a: tuple[tuple, ...]
    seed: Optional[int] = None
    variables: tuple[str, ...] = field(default=())

    def __post_init__(self):
        circuit = self.circuit
        if self.seed is None:
            object.__setattr__(self, "seed", get_settings().randomness.default_seed)
        if not self.variables:
            object.__setattr__(self, "variables", tuple(f"X{j + 1}" for j in range(circuit.n)))
        if len(self.variables) != circuit.n:
            raise ProblemError(f"{len(self.variables)} variable names for {circuit.n} inputs")
        if circuit.p == 0:
            raise ProblemError("the matrix F is empty")
        if circuit.q > circuit.n:
            raise ProblemError(f"{circuit.q} equations in {circuit.n} variables")
        if self.s < self.p + self.r:
            raise ProblemError(f"s = {self.s} is smaller than p + r = {self.p + self.r}")
        a = tuple(tuple(rational(x) for x in row) for row in self.a)
        object.__setattr__(self, "a", a)
        if len(a) != self.s - self.p or any(len(row) != self.s for row in a):
            raise ProblemError(f"a must be {self.s - self.p}x{self.s}")
        if a and linalg.rational_rank(a) != len(a):
            raise ProblemError("a does not have full rank")

    @property
    def n(self) -> int:
        return self.circuit.n

    @property
    def q(self) -> int:
        return self.circuit.q

    @property
    def p(self) -> int:
        return self.circuit.p

    @property
    def s(self) -> int:
        return self.circuit.s

    @property
    def r(self) -> int:
        return self.n - self.q

    @property
    def degree(self) -> int:
        return max(self.circuit.degree, 1)

    @property
    def bezout_bound(self) -> int:
        return self.degree**self.n

    def a_rows(self, i: int) -> int:
        """Number of rows of a_i."""
        return self.s - self.p - i + 1

    @classmethod
    def with_random_matrix(
        cls,
        circuit: Circuit,
        seed: Optional[int] = None,
        entry_range: Optional[int] = None,
        variables: Sequence[str] = (),
    ) -> "DegeneracyProblem":
        """A problem whose matrix a is drawn from ``seed``; redrawn until it has full rank."""
        randomness = get_settings().randomness
        seed = randomness.default_seed if seed is None else seed
        entry_range = entry_range or randomness.matrix_range
        rng = random.Random(f"{seed}:a")
        rows, cols = circuit.s - circuit.p, circuit.s
        while True:
            a = [[rng.randint(-entry_range, entry_range) for _ in range(cols)] for _ in range(rows)]
            if not a or linalg.rational_rank(a) == rows:
                return cls(circuit=circuit, a=tuple(map(tuple, a)), seed=seed, variables=tuple(variables))


def build_T(problem: DegeneracyProblem, i: int) -> TView:
    """T(a_i) and the minors Delta, m_i, M_(s-i+1..s), N_(s-i..s)."""
    p, s, r = problem.p, problem.s, problem.r
    if not 1 <= i <= r + 1:
        raise ValueError(f"level {i} outside 1..{r + 1}")
    f_rows = tuple(range(p))
    matrix = MatrixView(f_rows, tuple(range(problem.a_rows(i))), tuple(range(s)))
    delta = MinorSpec(MinorRole.DELTA, 0, MatrixView(f_rows, (), tuple(range(p))))
    head = tuple(range(s - i))
    upper = tuple(
        MinorSpec(MinorRole.UPPER, i, MatrixView(f_rows, matrix.a_rows, head + (j - 1,)), j)
        for j in range(s - i + 1, s + 1)
    )
    leading = None
    lower: tuple[MinorSpec, ...] = ()
    if i <= r:
        next_rows = tuple(range(problem.a_rows(i + 1)))
        leading = MinorSpec(MinorRole.LEADING, i, MatrixView(f_rows, next_rows, head))
        lower = tuple(
            MinorSpec(MinorRole.LOWER, i, MatrixView(f_rows, next_rows, head[:-1] + (j - 1,)), j)
            for j in range(s - i, s + 1)
        )
    return TView(level=i, matrix=matrix, delta=delta, leading=leading, upper=upper, lower=lower)


def full_minor(problem: DegeneracyProblem) -> MinorSpec:
    """det T(a_1), the only s-minor of the square matrix T(a_1)."""
    s = problem.s
    view = MatrixView(tuple(range(problem.p)), tuple(range(problem.a_rows(1))), tuple(range(s)))
    return MinorSpec(MinorRole.FULL, 1, view)
