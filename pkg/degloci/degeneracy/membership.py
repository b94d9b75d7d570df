"""Probabilistic membership test for the levels W(a_i).

A point x of V lies in W(a_i) when F(x) has full rank p while T(a_i)(x) has
rank below s - i + 1. Both ranks are tested by multiplying with banded lower
triangular Toeplitz matrices U whose first diagonal is 1 and whose other
diagonals carry random integers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from degloci.circuit import RingPoint, evaluate
from degloci.config import get_settings
from degloci.degeneracy.problem import DegeneracyProblem
from degloci.errors import DivisorNotInvertible, NotOnVariety
from degloci.kronecker.fiber import GeometricResolution
from degloci.logging import get_logger
from degloci.upoly import linalg
from degloci.upoly.fields import QQ_FIELD, rational
from degloci.upoly.poly import UPoly, gcd
from degloci.upoly.rings import QuotientRing

logger = get_logger(__name__)


@dataclass(frozen=True)
class AlgebraicPoint:
    """Coordinates in QQ[T]/(P); the roots of P give the actual points."""

    modulus: UPoly
    coords: tuple[UPoly, ...]

    @classmethod
    def rational(cls, values: Sequence) -> "AlgebraicPoint":
        return cls(
            UPoly.variable(QQ_FIELD),
            tuple(UPoly.constant(QQ_FIELD, rational(v)) for v in values),
        )

    @classmethod
    def of_resolution(cls, resolution: GeometricResolution) -> "AlgebraicPoint":
        return cls(resolution.polynomial, tuple(resolution.params))


PointLike = Union[AlgebraicPoint, GeometricResolution, Sequence]


def _as_point(x: PointLike) -> AlgebraicPoint:
    if isinstance(x, AlgebraicPoint):
        return x
    if isinstance(x, GeometricResolution):
        return AlgebraicPoint.of_resolution(x)
    return AlgebraicPoint.rational(x)


def toeplitz(entries: Sequence, rows: int, cols: int) -> list[list]:
    """U[row][col] = u_(row - col + 1) with u_1 = 1; zero above the diagonal."""
    u = [rational(1)] + [rational(e) for e in entries]
    out = []
    for row in range(rows):
        out.append([u[row - col] if 0 <= row - col < len(u) else rational(0) for col in range(cols)])
    return out


def _rank_product(ring: QuotientRing, matrix: Sequence[Sequence], u: Sequence[Sequence]):
    lifted = [[ring.from_rational(c) for c in row] for row in u]
    return linalg.det(ring, linalg.matmul(ring, matrix, lifted))


def membership_test(
    problem: DegeneracyProblem,
    i: int,
    x: PointLike,
    rng: Optional[random.Random] = None,
    repetitions: Optional[int] = None,
) -> bool:
    """True when every point of ``x`` lies in W(a_i).

    ``x`` is a rational point, an AlgebraicPoint or a whole geometric
    resolution. Raises NotOnVariety when ``x`` is not on V.

    Only a nonzero minor is a certificate. A False coming from a nonzero
    minor of T(a_i) is always correct. A minor that vanishes at random U
    while the matrix has full rank happens with probability below
    deg / entry_range per draw, so a True answer, or a False because F
    looked rank deficient, is wrong with probability below
    (deg / entry_range) ** repetitions.
    """
    cfg = get_settings().membership
    repetitions = repetitions or cfg.repetitions
    rng = rng or random.Random(f"{problem.seed}:membership:{i}")
    if not 1 <= i <= problem.r + 1:
        raise ValueError(f"level {i} outside 1..{problem.r + 1}")
    point = _as_point(x)
    if len(point.coords) != problem.n:
        raise ValueError(f"point has {len(point.coords)} coordinates, problem needs {problem.n}")
    ring = QuotientRing(point.modulus.monic())
    ring_point = RingPoint.of(ring, [ring.from_poly(c) for c in point.coords])
    circuit = problem.circuit
    for value in evaluate(circuit, ring_point, circuit.equations):
        if not ring.is_zero(value):
            raise NotOnVariety("the point does not satisfy the equations G")
    if circuit.inequation:
        (h,) = evaluate(circuit, ring_point, [circuit.inequation])
        try:
            ring.inverse(h)
        except DivisorNotInvertible:
            raise NotOnVariety("the inequation H vanishes at the point") from None

    p, s = problem.p, problem.s
    names = [name for row in circuit.matrix for name in row]
    flat = evaluate(circuit, ring_point, names)
    f_matrix = [flat[k * s : (k + 1) * s] for k in range(p)]
    a_rows = [[ring.from_rational(c) for c in row] for row in problem.a[: problem.a_rows(i)]]
    t_matrix = f_matrix + a_rows
    size = len(t_matrix)

    full_rank = point.modulus.monic()
    degenerate = True
    for _ in range(repetitions):
        entries = [rng.randint(-cfg.entry_range, cfg.entry_range) for _ in range(s - 1)]
        if full_rank.degree > 0:
            delta = ring.to_poly(_rank_product(ring, f_matrix, toeplitz(entries, s, p)))
            full_rank = gcd(full_rank, delta)
        minor = _rank_product(ring, t_matrix, toeplitz(entries, s, size))
        if not ring.is_zero(minor):
            degenerate = False
            break
    result = degenerate and full_rank.degree <= 0
    logger.debug(
        "membership tested",
        level=i,
        degree=point.modulus.degree,
        full_rank=full_rank.degree <= 0,
        degenerate=degenerate,
        result=result,
    )
    return result
