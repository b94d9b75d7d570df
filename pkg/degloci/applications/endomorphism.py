"""Generic fibres of polynomial endomorphisms of affine n-space."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from degloci.circuit import CircuitBuilder, PolynomialParser, evaluate
from degloci.config import SolverSettings, get_settings
from degloci.degeneracy import DegeneracyProblem, SolveResult, solve
from degloci.errors import PromiseViolationDetected
from degloci.logging import get_logger
from degloci.upoly.fields import format_rational

logger = get_logger(__name__)


@dataclass
class FiberResult:
    result: SolveResult
    target: tuple  # the point whose preimage was computed

    @property
    def dominant(self) -> bool:
        return not self.result.is_empty

    @property
    def fiber_size(self) -> int:
        return self.result.degree

    def to_dict(self) -> dict:
        data = self.result.to_dict()
        data["dominant"] = self.dominant
        data["target"] = [format_rational(c) for c in self.target]
        return data


def endomorphism_problem(
    maps: Sequence[str],
    variables: Sequence[str],
    seed: Optional[int] = None,
    a: Optional[Sequence[Sequence]] = None,
) -> DegeneracyProblem:
    """V = n-space and F = [F_1, ..., F_n, 1]."""
    n = len(variables)
    if len(maps) != n:
        raise ValueError(f"{len(maps)} maps for {n} variables")
    builder = CircuitBuilder(n)
    parser = PolynomialParser(builder, variables)
    row = [builder.output(f"F{k + 1}", parser.parse(text)) for k, text in enumerate(maps)]
    row.append(builder.output("one", builder.one()))
    circuit = builder.build(matrix=[row])
    if a is not None:
        return DegeneracyProblem(circuit, tuple(map(tuple, a)), seed=seed, variables=tuple(variables))
    return DegeneracyProblem.with_random_matrix(circuit, seed=seed, variables=variables)


def fiber_target(problem: DegeneracyProblem) -> tuple:
    """a_(1,1..n) / a_(1,n+1), the point whose fibre W(a_n) is."""
    first = problem.a[0]
    if not first[-1]:
        raise ValueError("a_(1,n+1) vanishes, the target point is at infinity")
    return tuple(c / first[-1] for c in first[:-1])


def check_fiber_points(problem: DegeneracyProblem, result: SolveResult, target: Sequence) -> None:
    """Every output point maps to ``target``; PromiseViolationDetected otherwise."""
    if result.is_empty:
        return
    resolution = result.resolution
    ring = resolution.quotient()
    names = list(problem.circuit.matrix[0][:-1])
    values = evaluate(problem.circuit, resolution.point(ring), names)
    for value, c in zip(values, target):
        if not ring.is_zero(ring.sub(value, ring.from_rational(c))):
            raise PromiseViolationDetected("a fibre point does not map to the target point")


def generic_fiber(
    maps: Sequence[str],
    variables: Sequence[str],
    seed: Optional[int] = None,
    settings: Optional[SolverSettings] = None,
    a: Optional[Sequence[Sequence]] = None,
    prime: Optional[int] = None,
) -> FiberResult:
    """The fibre of Psi = (F_1, ..., F_n) over a generic point; empty iff Psi is not dominant."""
    cfg = settings or get_settings()
    problem = endomorphism_problem(maps, variables, seed, a)
    target = fiber_target(problem)
    result = solve(problem, prime=prime, settings=cfg)
    check_fiber_points(problem, result, target)
    logger.info("generic fibre", dominant=not result.is_empty, fiber_size=result.degree)
    return FiberResult(result, target)
