"""Intersecting a lifting fibre with a hypersurface g = 0.

The last free coordinate becomes a parameter t. Above each t the curve gives
a squarefree Q(t, T) and a parameterization; the resultant N(t) of Q and g
vanishes exactly at the parameters of the intersection points, and trace
formulas give their remaining coordinates as R_j(t) / R_1(t). All three are
interpolated from specializations at t = 1, 2, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from degloci.circuit import RingPoint, evaluate
from degloci.errors import DivisorNotInvertible, ProblemError, RandomnessFailure
from degloci.kronecker.clean import CleanMode, FiberOrEmpty, clean_nonzeros
from degloci.kronecker.curve import KroneckerCurve, lift_curve
from degloci.kronecker.fiber import EMPTY, LiftingFiber, to_x
from degloci.logging import get_logger
from degloci.upoly.poly import UPoly, gcd, interpolate, resultant, sqf_part
from degloci.upoly.rings import QuotientRing
from degloci.upoly.traces import power_sums, trace

logger = get_logger(__name__)


@dataclass(frozen=True)
class _Sample:
    t: object
    norm: object
    trace_inverse: object
    coordinate_traces: tuple


def _sample(curve: KroneckerCurve, g: str, t0) -> _Sample | None:
    fiber = curve.fiber
    domain = fiber.domain
    try:
        q, params = curve.specialize(t0)
    except DivisorNotInvertible:
        return None
    ring = QuotientRing(q)
    free = [ring.from_scalar(c) for c in curve.free_point(t0)]
    dependents = [ring.from_poly(v) for v in params]
    point = RingPoint.of(ring, to_x(ring, fiber.coords, free + dependents))
    (value,) = evaluate(fiber.circuit, point, [g])
    norm = resultant(q, ring.to_poly(value))
    if domain.is_zero(norm):
        return None
    inverse = ring.inverse(value)
    sums = power_sums(q, q.degree + 1)
    traces = tuple(
        domain.mul(norm, trace(ring, ring.mul(y, inverse), sums)) for y in dependents
    )
    return _Sample(
        t=domain.convert(t0),
        norm=norm,
        trace_inverse=domain.mul(norm, trace(ring, inverse, sums)),
        coordinate_traces=traces,
    )


def _intersect(fiber: LiftingFiber, g: str) -> FiberOrEmpty:
    domain = fiber.domain
    circuit = fiber.circuit
    g_degree = circuit.degree_of(g)
    if g_degree < 0:
        raise ProblemError(f"{g} is identically zero")
    if fiber.dimension == 0:
        raise ValueError("cannot intersect a zero-dimensional fibre")
    if g_degree == 0:
        return EMPTY
    m = fiber.dimension
    direction = tuple(domain.one() if i == m - 1 else domain.zero() for i in range(m))
    curve = lift_curve(fiber, direction)
    bound = fiber.degree * g_degree
    needed = bound + 2
    samples: list[_Sample] = []
    # Q(t, T) fails to be squarefree or meets g at finitely many t
    budget = needed + 2 * fiber.degree * fiber.degree + bound + 8
    t0 = 0
    while len(samples) < needed:
        t0 += 1
        if t0 > budget:
            raise RandomnessFailure("too many degenerate specializations of the curve")
        sample = _sample(curve, g, t0)
        if sample is not None:
            samples.append(sample)
    fit, check = samples[:-1], samples[-1]
    xs = [s.t for s in fit]
    norm = interpolate(domain, xs, [s.norm for s in fit])
    r1 = interpolate(domain, xs, [s.trace_inverse for s in fit])
    coords = [
        interpolate(domain, xs, [s.coordinate_traces[j] for s in fit])
        for j in range(len(check.coordinate_traces))
    ]
    if (
        norm(check.t) != check.norm
        or r1(check.t) != check.trace_inverse
        or any(c(check.t) != v for c, v in zip(coords, check.coordinate_traces))
    ):
        raise RandomnessFailure("interpolation of the intersection does not verify")
    raw = sqf_part(norm).monic() if norm.degree > 0 else UPoly.constant(domain, 1)
    raw_degree = raw.degree
    if raw.degree > 0 and r1.is_zero():
        raise RandomnessFailure("trace of the inverse of g vanishes identically")
    # several branches through one point: R_1 and every R_j share a removable factor
    branching = gcd(raw, r1) if raw.degree > 0 else raw
    while branching.degree > 0:
        r1, remainder = divmod(r1, branching)
        if not remainder.is_zero():
            raise RandomnessFailure("intersection points share a parameter value")
        reduced = []
        for c in coords:
            c, remainder = divmod(c, branching)
            if not remainder.is_zero():
                raise RandomnessFailure("intersection points share a parameter value")
            reduced.append(c)
        coords = reduced
        branching = gcd(raw, r1)
    logger.debug(
        "hypersurface intersected",
        output=g,
        degree=fiber.degree,
        bound=bound,
        raw_degree=raw_degree,
        degree_after=raw.degree,
    )
    if raw.degree <= 0:
        return EMPTY
    ring = QuotientRing(raw)
    r1_inverse = ring.to_poly(ring.inverse(ring.from_poly(r1)))
    # T = z_m + t is the new primitive element
    z_last = fiber.lifting_point[m - 1]
    back = UPoly.from_coeffs(domain, [domain.neg(z_last), 1])
    params = [UPoly.variable(domain)]
    for c in coords:
        params.append(((c * r1_inverse) % raw).compose(back))
    q = raw.compose(back)
    primitive = (domain.one(),) + tuple(domain.zero() for _ in coords)
    result = LiftingFiber(
        domain=domain,
        circuit=circuit,
        system=fiber.system + (g,),
        coords=fiber.coords,
        lifting_point=fiber.lifting_point[: m - 1],
        primitive=primitive,
        minimal_poly=q,
        params=tuple(v % q for v in params),
    )
    if any(not r.is_zero() for r in result.evaluate_outputs(result.system)):
        raise RandomnessFailure("intersection points do not satisfy the system")
    return result


def intersect_with_hypersurface(
    fiber: FiberOrEmpty, g: str, avoid: Sequence[str] = ()
) -> FiberOrEmpty:
    """Lifting fibre of the union of components of (V and g = 0) outside {h = 0 for h in avoid}.

    ``g`` must not vanish identically on any component of V. Degree drops
    below the Bezout bound are normal: multiplicities are dropped by the
    squarefree part, and a point where several branches of the curve meet is
    recovered once.
    """
    if fiber is EMPTY:
        return EMPTY
    result = _intersect(fiber, g)
    return clean_nonzeros(result, avoid, CleanMode.REMOVE_ZEROS)
