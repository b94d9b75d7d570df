"""Changing the primitive element, the lifting point or the coordinates of a fibre."""

from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from degloci.errors import BadLiftingPoint, DivisorNotInvertible, NotPrimitive
from degloci.kronecker.curve import lift_curve
from degloci.kronecker.fiber import LiftingFiber
from degloci.logging import get_logger
from degloci.upoly import linalg
from degloci.upoly.fields import rational
from degloci.upoly.poly import UPoly, gcdex
from degloci.upoly.traces import kronecker_from_traces, power_sums, trace

logger = get_logger(__name__)


def _reparameterize(fiber: LiftingFiber, primitive: Sequence) -> tuple[UPoly, list[UPoly]]:
    """Minimal polynomial and parameterization for the linear form ``primitive``."""
    domain = fiber.domain
    ring = fiber.quotient()
    degree = fiber.degree
    u = ring.zero()
    values = [ring.from_poly(v) for v in fiber.params]
    for lam, y in zip(primitive, values):
        u = ring.add(u, ring.mul(ring.from_scalar(lam), y))
    sums = power_sums(fiber.minimal_poly, degree + 1)
    powers = [ring.one()]
    for _ in range(degree):
        powers.append(ring.mul(powers[-1], u))
    u_traces = [trace(ring, p, sums) for p in powers]
    y_traces = [[trace(ring, ring.mul(y, powers[i]), sums) for i in range(degree)] for y in values]
    q, numerators = kronecker_from_traces(domain, degree, u_traces, y_traces)
    minimal = UPoly.from_coeffs(domain, q)
    s, _, h = gcdex(minimal.derivative(), minimal)
    if minimal.degree != degree or h.degree != 0:
        raise NotPrimitive("linear form does not separate the points of the fibre")
    params = [(UPoly.from_coeffs(domain, w) * s) % minimal for w in numerators]
    return minimal, params


def change_primitive_element(fiber: LiftingFiber, primitive: Sequence) -> LiftingFiber:
    """The same fibre parameterized by the roots of the new primitive element.

    ``primitive`` gives one coefficient per dependent coordinate. Raises
    NotPrimitive when the form takes equal values at two points.
    """
    domain = fiber.domain
    primitive = tuple(domain.convert(c) for c in primitive)
    if len(primitive) != len(fiber.params):
        raise ValueError("primitive element needs one coefficient per dependent coordinate")
    minimal, params = _reparameterize(fiber, primitive)
    return replace(fiber, primitive=primitive, minimal_poly=minimal, params=tuple(params))


def change_lifting_point(fiber: LiftingFiber, point: Sequence) -> LiftingFiber:
    """Move the free coordinates to ``point`` along the straight line from z.

    Raises BadLiftingPoint when the new fibre has fewer points or is not
    parameterized by the same primitive element.
    """
    domain = fiber.domain
    point = tuple(domain.convert(c) for c in point)
    if len(point) != fiber.dimension:
        raise ValueError("lifting point needs one coordinate per free variable")
    if point == tuple(fiber.lifting_point):
        return fiber
    direction = [domain.sub(b, a) for a, b in zip(fiber.lifting_point, point)]
    curve = lift_curve(fiber, direction)
    try:
        q, params = curve.specialize(1)
    except DivisorNotInvertible:
        raise BadLiftingPoint("new lifting point lies on the discriminant locus") from None
    if q.degree != fiber.degree:
        raise BadLiftingPoint("fibre degree changes at the new lifting point")
    return replace(fiber, lifting_point=point, minimal_poly=q, params=tuple(params))


def change_coordinates(fiber: LiftingFiber, coords: Sequence[Sequence]) -> LiftingFiber:
    """Express the fibre in new coordinates Y' with X = M' Y'.

    In positive dimension the free coordinates of Y' must only depend on the
    free coordinates of Y; otherwise ValueError.
    """
    domain = fiber.domain
    n, m = fiber.n, fiber.dimension
    new_coords = tuple(tuple(rational(c) for c in row) for row in coords)
    if len(new_coords) != n or any(len(row) != n for row in new_coords):
        raise ValueError(f"coordinate matrix must be {n}x{n}")
    if linalg.rational_det(new_coords) == 0:
        raise ValueError("coordinate matrix is singular")
    # Y' = C Y with C = M'^-1 M
    change = linalg.rational_matmul(linalg.rational_inverse(new_coords), fiber.coords)
    if any(change[i][j] != 0 for i in range(m) for j in range(m, n)):
        raise ValueError("coordinate change mixes dependent coordinates into the free ones")
    lifting_point = []
    for i in range(m):
        acc = domain.zero()
        for j in range(m):
            acc = domain.add(acc, domain.mul(domain.convert(change[i][j]), fiber.lifting_point[j]))
        lifting_point.append(acc)
    shifts = []
    for i in range(m, n):
        acc = domain.zero()
        for j in range(m):
            acc = domain.add(acc, domain.mul(domain.convert(change[i][j]), fiber.lifting_point[j]))
        shifts.append(acc)
    params = []
    for i, shift in zip(range(m, n), shifts):
        acc = UPoly.constant(domain, shift)
        for j in range(m, n):
            if change[i][j]:
                acc = acc + fiber.params[j - m].scale(change[i][j])
        params.append(acc)
    # u = lambda . Y_dep = lambda C_dd^-1 (Y'_dep - C_df z)
    block = [[change[i][j] for j in range(m, n)] for i in range(m, n)]
    block_inverse = linalg.rational_inverse(block) if block else []
    primitive = []
    for k in range(n - m):
        acc = domain.zero()
        for j, lam in enumerate(fiber.primitive):
            acc = domain.add(acc, domain.mul(lam, domain.convert(block_inverse[j][k])))
        primitive.append(acc)
    # lambda' . v' = T + offset; shift T so the identity holds exactly
    offset = domain.zero()
    for lam, shift in zip(primitive, shifts):
        offset = domain.add(offset, domain.mul(lam, shift))
    q = fiber.minimal_poly
    if not domain.is_zero(offset):
        q = q.shift(domain.neg(offset))
        params = [v.shift(domain.neg(offset)) for v in params]
    logger.debug("coordinates changed", dimension=m, degree=fiber.degree)
    return replace(
        fiber,
        coords=new_coords,
        lifting_point=tuple(lifting_point),
        primitive=tuple(primitive),
        minimal_poly=q,
        params=tuple(v % q for v in params),
    )
