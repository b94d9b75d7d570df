"""The descending chain W(a_1) ⊇ W(a_2) ⊇ ... ⊇ W(a_r) on one chart."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from degloci.degeneracy.minors import ChartMinors
from degloci.degeneracy.problem import DegeneracyProblem
from degloci.errors import InvariantViolation, RandomnessFailure
from degloci.kronecker import EMPTY, CleanMode, LiftingFiber, check_fiber, clean_nonzeros
from degloci.kronecker.clean import FiberOrEmpty
from degloci.kronecker.intersect import intersect_with_hypersurface
from degloci.logging import get_logger

logger = get_logger(__name__)


@dataclass
class StepDegrees:
    label: str
    raw: int
    degree: int
    bound: Optional[int] = None  # Bezout bound for the raw degree

    def to_dict(self) -> dict:
        return {"step": self.label, "raw": self.raw, "degree": self.degree, "bound": self.bound}


@dataclass
class ChartReport:
    index: int
    columns: tuple
    steps: list[StepDegrees] = field(default_factory=list)
    degree: int = 0

    def to_dict(self) -> dict:
        return {
            "chart": self.index,
            "columns": list(self.columns),
            "steps": [s.to_dict() for s in self.steps],
            "degree": self.degree,
        }


def _degree(fiber: FiberOrEmpty) -> int:
    return 0 if fiber is EMPTY else fiber.degree


def _checked(fiber: FiberOrEmpty, check: bool) -> FiberOrEmpty:
    if check and fiber is not EMPTY:
        try:
            check_fiber(fiber)
        except InvariantViolation as exc:
            raise RandomnessFailure(f"chain fibre rejected: {exc}") from exc
    return fiber


def solve_chain_on_chart(
    problem: DegeneracyProblem,
    minors: ChartMinors,
    fiber: LiftingFiber,
    check: bool = True,
    report: Optional[ChartReport] = None,
) -> FiberOrEmpty:
    """Zero-dimensional fibre of W(a_r) on the chart {Delta != 0}, or EMPTY.

    ``fiber`` is a lifting fibre of V over a circuit carrying the chart
    minors. Level 1 cuts V_Delta with det T(a_1). Level i + 1 cuts with m_i,
    drops the zeros of H, Delta and m_(i+1), keeps the common zeros of
    N_(s-i..s) and switches the lifting system to G, N_(s-i..s).
    """
    report = report or ChartReport(minors.chart.index, minors.chart.columns)
    chart = minors.chart.index
    r = problem.r
    inequation = [problem.circuit.inequation] if problem.circuit.inequation else []
    equations = list(problem.circuit.equations)
    circuit = fiber.circuit

    def record(label: str, raw: FiberOrEmpty, result: FiberOrEmpty, bound=None) -> None:
        report.steps.append(StepDegrees(label, _degree(raw), _degree(result), bound))
        logger.info(
            "chain step finished",
            chart=chart,
            step=label,
            raw_degree=_degree(raw),
            degree=_degree(result),
        )

    current = _checked(clean_nonzeros(fiber, [minors.delta]), check)
    record("V", fiber, current)
    if current is not EMPTY and r >= 1:
        bound = current.degree * circuit.degree_of(minors.full)
        raw = intersect_with_hypersurface(current, minors.full)
        current = _checked(
            clean_nonzeros(raw, inequation + [minors.delta, minors.leading[1]]), check
        )
        record("i=1", raw, current, bound)
    for i in range(1, r):
        if current is EMPTY:
            break
        bound = current.degree * circuit.degree_of(minors.leading[i])
        raw = intersect_with_hypersurface(current, minors.leading[i])
        cleaned = clean_nonzeros(raw, inequation + [minors.delta, minors.leading[i + 1]])
        kept = clean_nonzeros(cleaned, minors.lower[i], CleanMode.KEEP_ZEROS)
        if kept is not EMPTY:
            kept = kept.with_system(equations + list(minors.lower[i]))
        current = _checked(kept, check)
        record(f"i={i + 1}", raw, current, bound)
    report.degree = _degree(current)
    return current
