"""Assembling one geometric resolution from the resolutions of several charts."""

from __future__ import annotations

from typing import Sequence, Union

from degloci.errors import NotPrimitive
from degloci.kronecker.fiber import EMPTY, GeometricResolution, LiftingFiber, _Empty, to_resolution
from degloci.logging import get_logger
from degloci.upoly.poly import gcd
from degloci.upoly.rings import QuotientRing

logger = get_logger(__name__)

Part = Union[GeometricResolution, LiftingFiber, _Empty]


def _as_resolution(part: Part) -> GeometricResolution | None:
    if part is EMPTY:
        return None
    if isinstance(part, LiftingFiber):
        part = to_resolution(part)
    if part.degree <= 0:
        return None
    return part


def merge_resolutions(parts: Sequence[Part]) -> GeometricResolution | _Empty:
    """Union of zero-dimensional parts sharing the primitive form u.

    Points already present in an earlier part are dropped (gcd of the
    polynomials, checked against the parameterizations); the remaining roots
    are glued in by Chinese remaindering. Returns EMPTY when nothing is left.
    """
    resolutions = [r for r in (_as_resolution(p) for p in parts) if r is not None]
    if not resolutions:
        return EMPTY
    first = resolutions[0]
    domain, primitive = first.domain, first.primitive
    polynomial = first.polynomial.monic()
    params = [v % polynomial for v in first.params]
    for part in resolutions[1:]:
        if part.domain != domain or part.n != len(params):
            raise ValueError("resolutions live in different frames")
        if part.primitive != primitive:
            raise ValueError("resolutions use different primitive elements")
        other = part.polynomial.monic()
        common = gcd(polynomial, other)
        if common.degree > 0:
            for mine, theirs in zip(params, part.params):
                if not ((mine - theirs) % common).is_zero():
                    raise NotPrimitive("two charts give different points for one value of u")
        fresh = other // common
        if fresh.degree <= 0:
            continue
        ring = QuotientRing(fresh)
        # x = mine + P * ((theirs - mine) * P^-1 mod fresh)
        scale = ring.inverse(ring.from_poly(polynomial))
        merged = []
        for mine, theirs in zip(params, part.params):
            delta = ring.mul(ring.from_poly(theirs - mine), scale)
            merged.append(mine + polynomial * ring.to_poly(delta))
        polynomial = polynomial * fresh
        params = merged
    logger.debug("resolutions merged", parts=len(resolutions), degree=polynomial.degree)
    return GeometricResolution(polynomial, tuple(v % polynomial for v in params), primitive)
