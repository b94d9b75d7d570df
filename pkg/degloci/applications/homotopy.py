"""Counting the solutions of a generic member of the pencil lambda F + mu G."""

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
class HomotopyResult:
    result: SolveResult
    weights: tuple  # (lambda, mu) of the deformed system
    rhs: tuple  # lambda F_j + mu G_j = rhs_j

    @property
    def count(self) -> int:
        return self.result.degree

    def to_dict(self) -> dict:
        data = self.result.to_dict()
        data["count"] = self.count
        data["weights"] = [format_rational(c) for c in self.weights]
        data["rhs"] = [format_rational(c) for c in self.rhs]
        return data


def homotopy_problem(
    start: Sequence[str],
    target: Sequence[str],
    variables: Sequence[str],
    seed: Optional[int] = None,
    a: Optional[Sequence[Sequence]] = None,
) -> DegeneracyProblem:
    """V = n-space and F = [[F, 1, 0], [G, 0, 1]]."""
    n = len(variables)
    if len(start) != n or len(target) != n:
        raise ValueError(f"homotopy needs {n} polynomials on each side")
    builder = CircuitBuilder(n)
    parser = PolynomialParser(builder, variables)
    top = [builder.output(f"F{k + 1}", parser.parse(text)) for k, text in enumerate(start)]
    bottom = [builder.output(f"G{k + 1}", parser.parse(text)) for k, text in enumerate(target)]
    one = builder.output("one", builder.one())
    zero = builder.output("zero", builder.zero())
    circuit = builder.build(matrix=[top + [one, zero], bottom + [zero, one]])
    if a is not None:
        return DegeneracyProblem(circuit, tuple(map(tuple, a)), seed=seed, variables=tuple(variables))
    return DegeneracyProblem.with_random_matrix(circuit, seed=seed, variables=variables)


def deformation(problem: DegeneracyProblem) -> tuple[tuple, tuple]:
    """(lambda, mu) and the right-hand side read off the first row of a."""
    first = problem.a[0]
    n = problem.n
    return (first[n], first[n + 1]), tuple(first[:n])


def check_deformed_points(problem: DegeneracyProblem, result: SolveResult) -> None:
    """Every output point solves lambda F + mu G = rhs; PromiseViolationDetected otherwise."""
    if result.is_empty:
        return
    (lam, mu), rhs = deformation(problem)
    resolution = result.resolution
    ring = resolution.quotient()
    n = problem.n
    names = list(problem.circuit.matrix[0][:n]) + list(problem.circuit.matrix[1][:n])
    values = evaluate(problem.circuit, resolution.point(ring), names)
    for f, g, c in zip(values[:n], values[n:], rhs):
        combined = ring.add(ring.mul(ring.from_rational(lam), f), ring.mul(ring.from_rational(mu), g))
        if not ring.is_zero(ring.sub(combined, ring.from_rational(c))):
            raise PromiseViolationDetected("a point does not solve the deformed system")


def homotopy_count(
    start: Sequence[str],
    target: Sequence[str],
    variables: Sequence[str],
    seed: Optional[int] = None,
    settings: Optional[SolverSettings] = None,
    a: Optional[Sequence[Sequence]] = None,
    prime: Optional[int] = None,
) -> HomotopyResult:
    """Solutions of the generic deformed system lambda F + mu G = c."""
    cfg = settings or get_settings()
    problem = homotopy_problem(start, target, variables, seed, a)
    result = solve(problem, prime=prime, settings=cfg)
    check_deformed_points(problem, result)
    weights, rhs = deformation(problem)
    logger.info("homotopy counted", count=result.degree)
    return HomotopyResult(result, weights, rhs)
