"""Removing (or keeping) the points of a fibre where given functions vanish."""

from __future__ import annotations

from enum import Enum
from typing import Sequence, Union

from degloci.kronecker.fiber import EMPTY, LiftingFiber, _Empty
from degloci.logging import get_logger
from degloci.upoly.poly import gcd

logger = get_logger(__name__)

FiberOrEmpty = Union[LiftingFiber, _Empty]


class CleanMode(str, Enum):
    REMOVE_ZEROS = "remove-zeros"
    KEEP_ZEROS = "keep-zeros"


def clean_nonzeros(
    fiber: FiberOrEmpty,
    outputs: Sequence[str],
    mode: CleanMode = CleanMode.REMOVE_ZEROS,
) -> FiberOrEmpty:
    """Drop the points where one of ``outputs`` vanishes, or keep only the common zeros.

    Works on the roots of Q: each output evaluated on the fibre is a
    polynomial h(T) mod Q, and gcd(Q, h) collects the roots where it vanishes.
    Returns EMPTY when no point survives.
    """
    if fiber is EMPTY or not outputs:
        return fiber
    mode = CleanMode(mode)
    q = fiber.minimal_poly
    before = q.degree
    for h in fiber.evaluate_outputs(outputs):
        common = gcd(q, h)
        q = common if mode is CleanMode.KEEP_ZEROS else q // common
        if q.degree <= 0:
            break
    if q.degree <= 0:
        logger.debug("fibre cleaned to nothing", mode=mode.value, degree_before=before)
        return EMPTY
    q = q.monic()
    if q.degree == before:
        return fiber
    params = tuple(v % q for v in fiber.params)
    logger.debug("fibre cleaned", mode=mode.value, degree_before=before, degree_after=q.degree)
    return LiftingFiber(
        domain=fiber.domain,
        circuit=fiber.circuit,
        system=fiber.system,
        coords=fiber.coords,
        lifting_point=fiber.lifting_point,
        primitive=fiber.primitive,
        minimal_poly=q,
        params=params,
    )
