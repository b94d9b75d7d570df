"""p-adic Newton lifting of a zero-dimensional fibre and its rational reconstruction."""

from __future__ import annotations

from dataclasses import replace
from typing import Optional

from degloci.circuit import value_and_jacobian
from degloci.errors import DivisorNotInvertible, InsufficientPrecision, SingularJacobian
from degloci.kronecker.fiber import LiftingFiber
from degloci.logging import get_logger
from degloci.upoly import linalg
from degloci.upoly.fields import QQ_FIELD, PrimeField, PrimePowerRing
from degloci.upoly.modular import rational_reconstruction, reconstruct_poly
from degloci.upoly.poly import UPoly
from degloci.upoly.rings import QuotientRing

logger = get_logger(__name__)


def _newton_step(fiber: LiftingFiber, ring: PrimePowerRing) -> LiftingFiber:
    """One global Newton step on (Q, v) over Z/p^k, doubling the p-adic precision."""
    lifted = replace(
        fiber,
        domain=ring,
        lifting_point=tuple(ring.convert(c) for c in fiber.lifting_point),
        primitive=tuple(ring.convert(c) for c in fiber.primitive),
        minimal_poly=fiber.minimal_poly.reduce_to(ring),
        params=tuple(v.reduce_to(ring) for v in fiber.params),
    )
    quotient = lifted.quotient()
    point = lifted.x_point(quotient)
    values, jacobian = value_and_jacobian(
        lifted.circuit, point, lifted.system, lifted.dependent_directions()
    )
    try:
        correction = linalg.matvec(quotient, linalg.inverse(quotient, jacobian), values)
    except DivisorNotInvertible as exc:
        raise SingularJacobian("jacobian of the fibre is singular modulo p") from exc
    w = [quotient.sub(quotient.from_poly(v), c) for v, c in zip(lifted.params, correction)]
    # delta = lambda . w - T measures how far T is from the primitive element
    delta = quotient.neg(quotient.variable())
    for lam, y in zip(lifted.primitive, w):
        delta = quotient.add(delta, quotient.mul(quotient.from_scalar(lam), y))
    q = lifted.minimal_poly
    q_dense = quotient.mul(quotient.from_poly(q.derivative()), delta)
    new_q = q - quotient.to_poly(q_dense)
    params = []
    for y in w:
        shift = quotient.mul(quotient.derivative(y), delta)
        params.append(quotient.to_poly(quotient.sub(y, shift)))
    return replace(lifted, minimal_poly=new_q, params=tuple(params))


def _reconstruct(fiber: LiftingFiber) -> Optional[LiftingFiber]:
    modulus = fiber.domain.modulus
    q = reconstruct_poly(fiber.minimal_poly)
    if q is None or q.degree != fiber.degree:
        return None
    params = []
    for v in fiber.params:
        r = reconstruct_poly(v)
        if r is None:
            return None
        params.append(r)
    scalars = []
    for c in fiber.lifting_point + fiber.primitive:
        r = rational_reconstruction(int(c), modulus)
        if r is None:
            return None
        scalars.append(r)
    m = fiber.dimension
    return replace(
        fiber,
        domain=QQ_FIELD,
        lifting_point=tuple(scalars[:m]),
        primitive=tuple(scalars[m:]),
        minimal_poly=q,
        params=tuple(params),
    )


def _exact(fiber: LiftingFiber) -> bool:
    ring = fiber.quotient()
    if any(not ring.is_zero(v) for v in fiber.residuals()):
        return False
    u = ring.zero()
    for lam, v in zip(fiber.primitive, fiber.params):
        u = ring.add(u, ring.mul(ring.from_scalar(lam), ring.from_poly(v)))
    return ring.equal(u, ring.variable())


def lift_fiber(fiber: LiftingFiber, max_steps: int = 14) -> LiftingFiber:
    """Rational fibre whose reduction modulo p is ``fiber``.

    Doubles the p-adic precision until two consecutive reconstructions agree
    and the candidate satisfies the lifting system exactly over QQ. Raises
    InsufficientPrecision after ``max_steps`` doublings.
    """
    if not isinstance(fiber.domain, PrimeField):
        raise ValueError("p-adic lifting starts from a fibre over F_p")
    if fiber.dimension != 0:
        raise ValueError("only zero-dimensional fibres are lifted")
    prime = fiber.domain.modulus
    current = fiber
    exponent = 1
    previous: Optional[LiftingFiber] = None
    for step in range(1, max_steps + 1):
        exponent *= 2
        current = _newton_step(current, PrimePowerRing.of(prime, exponent))
        candidate = _reconstruct(current)
        if candidate is not None and previous is not None and _same(candidate, previous):
            if _exact(candidate):
                logger.debug(
                    "fibre lifted",
                    degree=fiber.degree,
                    steps=step,
                    precision_bits=exponent * prime.bit_length(),
                )
                return candidate
        previous = candidate
    raise InsufficientPrecision(f"no stable rational fibre after {max_steps} lifting steps")


def _same(a: LiftingFiber, b: LiftingFiber) -> bool:
    return (
        a.minimal_poly == b.minimal_poly
        and a.params == b.params
        and a.lifting_point == b.lifting_point
        and a.primitive == b.primitive
    )


def lifting_precision(fiber: LiftingFiber) -> int:
    """Bits of p-adic precision a lifted fibre would need, from its coefficient sizes."""
    bits = 0
    for poly in (fiber.minimal_poly,) + tuple(fiber.params):
        for c in poly.coeffs:
            bits = max(bits, 2 * (int(c.numerator).bit_length() + int(c.denominator).bit_length()) + 1)
    return bits
