"""Real sample points of smooth complete intersections through generic polar varieties.

For V = {G_1 = ... = G_q = 0} the matrix F is the Jacobian of G. Its
degeneracy loci are the generic polar varieties of V, and when the real
trace of V is smooth and compact every connected component of it meets the
last polar variety W(a_r).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from degloci.applications.realroots import RealPoint, real_points
from degloci.circuit import (
    Circuit,
    CircuitBuilder,
    compile_polynomials,
    derivative_name,
    differentiate,
    substitute_linear,
)
from degloci.config import SolverSettings, get_settings
from degloci.degeneracy import DegeneracyProblem, SolveResult, solve
from degloci.errors import ProblemError
from degloci.logging import get_logger
from degloci.upoly import linalg

logger = get_logger(__name__)


@dataclass(frozen=True)
class PolarTask:
    """Equations of V, as polynomial texts in ``variables``."""

    equations: tuple[str, ...]
    variables: tuple[str, ...]
    compact: bool = True
    pre_change: Optional[tuple[tuple, ...]] = None  # X -> A X before solving
    a: Optional[tuple[tuple, ...]] = None


@dataclass
class PolarResult:
    result: SolveResult
    points: list[RealPoint] = field(default_factory=list)

    def to_dict(self) -> dict:
        data = self.result.to_dict()
        data["real_points"] = [point.to_dict() for point in self.points]
        return data


def polar_circuit(equations: Circuit) -> Circuit:
    """F = Jacobian(G) and H = the sum of the squares of all q-minors of F."""
    names = list(equations.equations)
    q, n = len(names), equations.n
    if q == 0 or q > n:
        raise ProblemError(f"{q} equations in {n} variables do not define a polar problem")
    with_jacobian = differentiate(equations, names)
    builder = CircuitBuilder.extending(with_jacobian)
    jacobian = [[builder.node_of(derivative_name(g, j)) for j in range(n)] for g in names]
    total = builder.zero()
    for columns in combinations(range(n), q):
        minor = linalg.det(builder, [[row[c] for c in columns] for row in jacobian])
        total = builder.add(total, builder.mul(minor, minor))
    inequation = builder.output("H", total)
    return builder.build(
        equations=names,
        inequation=inequation,
        matrix=[[derivative_name(g, j) for j in range(n)] for g in names],
    )


def polar_problem(task: PolarTask, seed: Optional[int] = None) -> DegeneracyProblem:
    names = [f"G{k + 1}" for k in range(len(task.equations))]
    circuit = compile_polynomials(task.variables, dict(zip(names, task.equations)), equations=names)
    if task.pre_change is not None:
        circuit = substitute_linear(circuit, task.pre_change)
    circuit = polar_circuit(circuit)
    if task.a is not None:
        return DegeneracyProblem(circuit, task.a, seed=seed, variables=task.variables)
    return DegeneracyProblem.with_random_matrix(circuit, seed=seed, variables=task.variables)


def polar_sample_points(
    task: PolarTask,
    seed: Optional[int] = None,
    settings: Optional[SolverSettings] = None,
    prime: Optional[int] = None,
) -> PolarResult:
    """At least one real point on every connected component of a smooth compact real V."""
    cfg = settings or get_settings()
    if not task.compact:
        logger.warning("real trace not declared compact, sample points are best effort")
    problem = polar_problem(task, seed)
    result = solve(problem, prime=prime, settings=cfg)
    points = [] if result.is_empty else real_points(result.resolution, cfg.output.precision)
    logger.info(
        "polar sample points",
        degree=result.degree,
        real_points=len(points),
        equations=len(task.equations),
        n=problem.n,
    )
    return PolarResult(result, points)


def shifted_spheres_task(count: int, eps="1/1000000", substitute: bool = True) -> PolarTask:
    """The product of ``count`` unit spheres centred at (4j, 0, 0), shifted by -eps.

    With ``substitute`` the variables are replaced by
    (3X1+5X2+7X3, X1-X2+X3, -X1+2X2+5X3), and a is fixed to [[1,17,7],[11,23,13]].
    """
    if count < 1:
        raise ValueError("at least one sphere")
    factors = [f"((X1-{4 * j})^2+X2^2+X3^2-1)" for j in range(count)]
    equation = "*".join(factors) + f"-{eps}"
    pre_change = ((3, 5, 7), (1, -1, 1), (-1, 2, 5)) if substitute else None
    return PolarTask(
        equations=(equation,),
        variables=("X1", "X2", "X3"),
        compact=True,
        pre_change=pre_change,
        a=((1, 17, 7), (11, 23, 13)),
    )


def sphere_task(a: Optional[Sequence[Sequence]] = None) -> PolarTask:
    """The unit sphere in 3-space."""
    return PolarTask(
        equations=("X1^2+X2^2+X3^2-1",),
        variables=("X1", "X2", "X3"),
        a=tuple(tuple(row) for row in a) if a is not None else None,
    )
