"""The lifted curve through a lifting fibre.

Moving the free coordinates along ``z + t * direction`` turns a lifting fibre
into a curve. Newton's operator lifts the parameterization to a power series
in t; the traces of its powers then give the minimal polynomial Q(t, T) and
the numerators W_j(t, T) of the curve, with y_j = W_j / (dQ/dT).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from degloci.circuit import RingPoint, value_and_jacobian
from degloci.errors import DivisorNotInvertible, RandomnessFailure
from degloci.kronecker.fiber import LiftingFiber, to_x
from degloci.logging import get_logger
from degloci.upoly.lifting import newton_series_lift
from degloci.upoly.poly import UPoly, gcdex
from degloci.upoly.rings import ScalarSeriesRing, SeriesRing
from degloci.upoly.traces import kronecker_from_traces, power_sums, trace

logger = get_logger(__name__)


@dataclass(frozen=True)
class KroneckerCurve:
    """Q(t, T) and W_j(t, T) as lists of T-coefficients, each a polynomial in t."""

    fiber: LiftingFiber
    direction: tuple
    minimal_poly: tuple[UPoly, ...]  # T^0 .. T^D, the last one is 1
    numerators: tuple[tuple[UPoly, ...], ...]  # per dependent coordinate, T^0 .. T^(D-1)

    @property
    def degree(self) -> int:
        return len(self.minimal_poly) - 1

    def free_point(self, t0) -> list:
        domain = self.fiber.domain
        t0 = domain.convert(t0)
        return [
            domain.add(z, domain.mul(t0, d)) for z, d in zip(self.fiber.lifting_point, self.direction)
        ]

    def specialize(self, t0) -> tuple[UPoly, list[UPoly]]:
        """Q(t0, T) and the parameterization of the fibre above t0.

        Raises DivisorNotInvertible when Q(t0, T) is not squarefree.
        """
        domain = self.fiber.domain
        q = UPoly.from_coeffs(domain, [c(t0) for c in self.minimal_poly])
        if q.degree <= 0:
            return q, [UPoly.zero(domain) for _ in self.numerators]
        s, _, h = gcdex(q.derivative(), q)
        if h.degree != 0:
            raise DivisorNotInvertible(f"Q({t0}, T) is not squarefree")
        params = []
        for w in self.numerators:
            wt = UPoly.from_coeffs(domain, [c(t0) for c in w])
            params.append((wt * s) % q)
        return q, params


def curve_system(fiber: LiftingFiber, direction: Sequence):
    """Evaluator of the lifting system along ``z + t * direction`` for Newton lifting."""
    directions = fiber.dependent_directions()

    def evaluate_system(ring: SeriesRing, dependents: Sequence[tuple]):
        base = ring.base
        free = [
            ring.linear(base.from_scalar(z), base.from_scalar(d))
            for z, d in zip(fiber.lifting_point, direction)
        ]
        point = RingPoint.of(ring, to_x(ring, fiber.coords, free + list(dependents)))
        return value_and_jacobian(fiber.circuit, point, fiber.system, directions)

    return evaluate_system


def lift_curve(fiber: LiftingFiber, direction: Sequence) -> KroneckerCurve:
    """Lift ``fiber`` along the line z + t * direction in the free coordinates.

    Raises RandomnessFailure when the recovered curve has degree in t above
    the degree D of the fibre (too little precision for the series).
    """
    domain = fiber.domain
    direction = tuple(domain.convert(d) for d in direction)
    if len(direction) != fiber.dimension:
        raise ValueError("direction must have one entry per free coordinate")
    degree = fiber.degree
    sigma = degree + 2
    base = fiber.quotient()
    start = [base.from_poly(v) for v in fiber.params]
    if start:
        series = newton_series_lift(curve_system(fiber, direction), start, base, sigma)
    else:
        series = []
    ring = SeriesRing(base, sigma)
    u = ring.zero()
    for lam, y in zip(fiber.primitive, series):
        u = ring.add(u, ring.scale(y, base.from_scalar(lam)))
    sums = power_sums(fiber.minimal_poly, degree + 1)

    def series_trace(a) -> tuple:
        return tuple(trace(base, coeff, sums) for coeff in a)

    powers = [ring.one()]
    for _ in range(degree):
        powers.append(ring.mul(powers[-1], u))
    u_traces = [series_trace(p) for p in powers]
    y_traces = [[series_trace(ring.mul(y, powers[i])) for i in range(degree)] for y in series]
    ctx = ScalarSeriesRing(domain, sigma)
    q, numerators = kronecker_from_traces(ctx, degree, u_traces, y_traces)
    for coeff in list(q) + [c for w in numerators for c in w]:
        if not domain.is_zero(coeff[sigma - 1]):
            raise RandomnessFailure("lifted curve exceeds the degree bound")
    curve = KroneckerCurve(
        fiber=fiber,
        direction=direction,
        minimal_poly=tuple(ctx.to_poly(c) for c in q),
        numerators=tuple(tuple(ctx.to_poly(c) for c in w) for w in numerators),
    )
    logger.debug("curve lifted", degree=degree, dimension=fiber.dimension, sigma=sigma)
    return curve
