"""Lifting fibres of V = {G_1 = ... = G_q = 0} minus {H = 0}, one equation at a time."""

from __future__ import annotations

import random
from typing import Optional, Sequence

from degloci.circuit import Circuit
from degloci.errors import EmptyVariety, RandomnessFailure
from degloci.kronecker.clean import clean_nonzeros
from degloci.kronecker.fiber import EMPTY, LiftingFiber
from degloci.kronecker.intersect import intersect_with_hypersurface
from degloci.logging import get_logger
from degloci.upoly.fields import QQ_FIELD, Domain, rational
from degloci.upoly.poly import UPoly

logger = get_logger(__name__)


def random_noether_matrix(rng: random.Random, n: int, bound: int) -> tuple[tuple, ...]:
    """Unipotent upper-triangular matrix with entries in [-bound, bound]."""
    rows = []
    for i in range(n):
        rows.append(
            tuple(
                rational(1 if i == j else (rng.randint(-bound, bound) if j > i else 0))
                for j in range(n)
            )
        )
    return tuple(rows)


def ambient_fiber(
    circuit: Circuit,
    coords: Sequence[Sequence],
    lifting_point: Sequence,
    domain: Domain = QQ_FIELD,
) -> LiftingFiber:
    """The lifting fibre of affine n-space: one point, no dependent coordinates."""
    return LiftingFiber(
        domain=domain,
        circuit=circuit,
        system=(),
        coords=tuple(tuple(rational(c) for c in row) for row in coords),
        lifting_point=tuple(domain.convert(c) for c in lifting_point),
        primitive=(),
        minimal_poly=UPoly.variable(domain),
        params=(),
    )


def solve_square_subsystem(
    circuit: Circuit,
    equations: Optional[Sequence[str]] = None,
    inequation: Optional[str] = None,
    rng: Optional[random.Random] = None,
    domain: Domain = QQ_FIELD,
    coordinate_range: int = 2**16,
    coords: Optional[Sequence[Sequence]] = None,
    degrees: Optional[list] = None,
) -> LiftingFiber:
    """Lifting fibre of V by the incremental Kronecker loop.

    Starts from affine n-space in random Noether coordinates and intersects
    with G_1, ..., G_q in turn, removing the zeros of H after every step.
    Raises EmptyVariety when some step leaves no point. The degree after
    each step is appended to ``degrees`` when given.
    """
    rng = rng or random.Random()
    equations = list(circuit.equations if equations is None else equations)
    if inequation is None:
        inequation = circuit.inequation
    n = circuit.n
    if len(equations) > n:
        raise ValueError(f"{len(equations)} equations in {n} variables")
    if coords is None:
        coords = random_noether_matrix(rng, n, coordinate_range)
    point = [rng.randint(-coordinate_range, coordinate_range) for _ in range(n)]
    fiber = ambient_fiber(circuit, coords, point, domain)
    avoid = [inequation] if inequation else []
    for k, g in enumerate(equations, start=1):
        fiber = intersect_with_hypersurface(fiber, g, avoid)
        if fiber is EMPTY:
            raise EmptyVariety(f"no point left after equation {k} ({g})")
        logger.debug("square step finished", step=k, equation=g, degree=fiber.degree)
        if degrees is not None:
            degrees.append(fiber.degree)
    if not equations and avoid and clean_nonzeros(fiber, avoid) is EMPTY:
        raise RandomnessFailure("the inequation vanishes at the lifting point")
    return fiber
