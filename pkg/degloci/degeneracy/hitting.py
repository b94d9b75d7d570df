"""Hitting sequences: charts {Delta_t != 0} covering the points where rank F = p.

Chart t works with F b_t and a b_t, whose rank conditions equal those of F
and a. Each b_t already carries the column permutation that moves the chosen
p-minor to the front, so Delta_t is always the upper-left p-minor of F b_t.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from degloci.circuit import CircuitBuilder
from degloci.config import SolverSettings, get_settings
from degloci.degeneracy.problem import DegeneracyProblem
from degloci.errors import CoverageFailure
from degloci.kronecker.fiber import LiftingFiber
from degloci.logging import get_logger
from degloci.upoly import linalg
from degloci.upoly.fields import rational
from degloci.upoly.poly import gcd

logger = get_logger(__name__)


@dataclass(frozen=True)
class Chart:
    index: int
    matrix: tuple[tuple, ...]  # b_t, s x s rational
    columns: tuple[int, ...]  # columns of F b_t (before the move to the front) of Delta_t


@dataclass(frozen=True)
class HittingSequence:
    charts: tuple[Chart, ...]
    strategy: str

    def __len__(self) -> int:
        return len(self.charts)

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "charts": [
                {"index": c.index, "columns": list(c.columns), "identity": _is_permutation(c.matrix)}
                for c in self.charts
            ],
        }


def _is_permutation(matrix: Sequence[Sequence]) -> bool:
    return all(sum(1 for x in row if x) == 1 for row in matrix)


def front_permutation(s: int, columns: Sequence[int]) -> tuple[tuple, ...]:
    """Column permutation moving ``columns`` first, the others after them in order."""
    order = list(columns) + [c for c in range(s) if c not in columns]
    return tuple(tuple(rational(1 if order[j] == i else 0) for j in range(s)) for i in range(s))


def constant_minor_columns(problem: DegeneracyProblem) -> Optional[tuple[int, ...]]:
    """First p-subset (lexicographic) whose minor of F folds to a nonzero constant."""
    builder = CircuitBuilder.extending(problem.circuit)
    matrix = problem.circuit.matrix
    for columns in combinations(range(problem.s), problem.p):
        nodes = [[builder.node_of(row[c]) for c in columns] for row in matrix]
        value = builder.constant_value(linalg.det(builder, nodes))
        if value is not None and value:
            return columns
    return None


def chart_deltas(fiber: LiftingFiber, chart_matrices: Sequence[Sequence[Sequence]], p: int) -> list:
    """Delta_t = upper-left p-minor of F(x) b_t at the points of ``fiber``, as polynomials mod Q."""
    ring = fiber.quotient()
    names = [name for row in fiber.circuit.matrix for name in row]
    values = fiber.evaluate_outputs(names)
    s = len(fiber.circuit.matrix[0])
    f_values = [[ring.from_poly(values[k * s + c]) for c in range(s)] for k in range(p)]
    deltas = []
    for b in chart_matrices:
        b_ring = [[ring.from_rational(x) for x in row] for row in b]
        product = linalg.matmul(ring, f_values, b_ring)
        block = [row[:p] for row in product]
        deltas.append(ring.to_poly(linalg.det(ring, block)))
    return deltas


def covers(fiber: LiftingFiber, chart_matrices: Sequence[Sequence[Sequence]], p: int) -> bool:
    """True when every point of ``fiber`` has some Delta_t != 0."""
    common = fiber.minimal_poly
    for delta in chart_deltas(fiber, chart_matrices, p):
        common = gcd(common, delta)
        if common.degree == 0:
            return True
    return common.degree == 0


def choose_hitting_sequence(
    problem: DegeneracyProblem,
    fiber: Optional[LiftingFiber] = None,
    rng: Optional[random.Random] = None,
    settings: Optional[SolverSettings] = None,
) -> HittingSequence:
    """Charts for the chain, deterministic given ``rng``.

    A constant nonzero p-minor gives a single chart. When C(s, p) <= r + 1
    every p-subset of columns is a chart. Otherwise r + 1 random regular b_t
    are drawn and their coverage is checked on the points of ``fiber``.
    """
    cfg = settings or get_settings()
    rng = rng or random.Random(problem.seed)
    s, p, r = problem.s, problem.p, problem.r
    columns = constant_minor_columns(problem)
    if columns is not None:
        chart = Chart(0, front_permutation(s, columns), tuple(columns))
        return HittingSequence((chart,), "constant-minor")
    if comb(s, p) <= r + 1:
        charts = tuple(
            Chart(t, front_permutation(s, cols), tuple(cols))
            for t, cols in enumerate(combinations(range(s), p))
        )
        return HittingSequence(charts, "all-subsets")
    bound = cfg.randomness.hitting_range
    for attempt in range(cfg.randomness.hitting_retries):
        matrices = []
        while len(matrices) < r + 1:
            b = [[rng.randint(-bound, bound) for _ in range(s)] for _ in range(s)]
            if linalg.rational_det(b) != 0:
                matrices.append(tuple(tuple(rational(x) for x in row) for row in b))
        if fiber is None or covers(fiber, matrices, p):
            charts = tuple(Chart(t, b, tuple(range(p))) for t, b in enumerate(matrices))
            return HittingSequence(charts, "random")
        logger.debug("hitting sequence rejected", attempt=attempt)
    raise CoverageFailure(f"no covering hitting sequence in {cfg.randomness.hitting_retries} draws")
