"""Real roots of the minimal polynomial and the real points they carry."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sympy import Rational
from sympy.polys.densebasic import dup_degree
from sympy.polys.densetools import dup_clear_denoms, dup_eval
from sympy.polys.domains import QQ, ZZ
from sympy.polys.rootisolation import (
    dup_isolate_real_roots_sqf,
    dup_refine_real_root,
    dup_sturm,
)

from degloci.errors import DeglociError
from degloci.kronecker.fiber import GeometricResolution
from degloci.logging import get_logger
from degloci.upoly.fields import format_rational, rational
from degloci.upoly.poly import UPoly, sqf_part

logger = get_logger(__name__)


@dataclass(frozen=True)
class RealPoint:
    """One real point of a resolution: t in [low, high] and X_i = Q_i(t)."""

    low: object
    high: object
    coordinates: tuple[str, ...]  # decimal approximations of X_1..X_n

    @property
    def width(self):
        return self.high - self.low

    def to_dict(self) -> dict:
        return {
            "interval": [format_rational(self.low), format_rational(self.high)],
            "coordinates": list(self.coordinates),
        }


def _integer_dense(poly: UPoly) -> list:
    if poly.domain.modulus is not None:
        raise ValueError("real roots need a polynomial over QQ")
    dense = [QQ.convert(c) for c in poly.to_dense()]
    _, dense = dup_clear_denoms(dense, QQ, convert=True)
    return dense


def _sign_changes(values: Sequence) -> int:
    signs = [v > 0 for v in values if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(poly: UPoly, low=None, high=None) -> int:
    """Number of distinct real roots in (low, high] by a Sturm sequence; the whole line by default."""
    dense = [QQ.convert(c) for c in poly.to_dense()]
    if dup_degree(dense) <= 0:
        return 0
    sequence = dup_sturm(dense, QQ)

    def changes_at(x):
        return _sign_changes([dup_eval(f, x, QQ) for f in sequence])

    def changes_at_infinity(sign: int):
        return _sign_changes([f[0] * (sign ** dup_degree(f)) for f in sequence])

    left = changes_at_infinity(-1) if low is None else changes_at(QQ.convert(low))
    right = changes_at_infinity(1) if high is None else changes_at(QQ.convert(high))
    return left - right


def isolate_real_roots(poly: UPoly, width=None) -> list[tuple]:
    """Disjoint isolating intervals (low, high) of the real roots, in increasing order.

    Uses continued-fraction isolation on the squarefree part and checks the
    root count against a Sturm sequence. An exact rational root comes back as
    (x, x). ``width`` refines every interval below the given width.
    """
    squarefree = sqf_part(poly)
    if squarefree.degree <= 0:
        return []
    dense = _integer_dense(squarefree)
    eps = QQ.convert(rational(width)) if width is not None else None
    intervals = [(QQ.convert(a), QQ.convert(b)) for a, b in dup_isolate_real_roots_sqf(dense, ZZ, eps=eps)]
    count = sturm_count(squarefree)
    if count != len(intervals):
        raise DeglociError(f"root isolation found {len(intervals)} roots, Sturm count is {count}")
    logger.debug("real roots isolated", degree=poly.degree, roots=count)
    return intervals


def refine_root(poly: UPoly, interval: tuple, width) -> tuple:
    low, high = interval
    if low == high:
        return interval
    dense = _integer_dense(sqf_part(poly))
    return dup_refine_real_root(dense, low, high, ZZ, eps=QQ.convert(rational(width)))


def _derivative_bound(poly: UPoly, radius) -> object:
    bound = QQ(0)
    for k, c in enumerate(poly.coeffs):
        if k:
            bound += abs(QQ.convert(c)) * k * radius ** (k - 1)
    return bound


def _decimal(value, digits: int) -> str:
    return str(Rational(int(value.numerator), int(value.denominator)).evalf(digits))


def real_points(resolution: GeometricResolution, precision: int = 10) -> list[RealPoint]:
    """Real points of ``resolution`` with coordinates printed to ``precision`` digits.

    The parameter interval is refined until every Q_i varies by less than
    10^-precision across it.
    """
    points = []
    target = QQ(1, 10**precision)
    for low, high in isolate_real_roots(resolution.polynomial):
        radius = max(abs(low), abs(high)) + 1
        slope = max([_derivative_bound(v, radius) for v in resolution.params] + [QQ(1)])
        if low != high:
            low, high = refine_root(resolution.polynomial, (low, high), target / slope)
        middle = (low + high) / 2
        coords = tuple(
            _decimal(dup_eval([QQ.convert(c) for c in v.to_dense()], middle, QQ), precision)
            for v in resolution.params
        )
        points.append(RealPoint(low, high, coords))
    logger.info("real points computed", degree=resolution.degree, real=len(points))
    return points


def approximate(value, digits: int = 10) -> str:
    """Decimal string of a rational number."""
    return _decimal(rational(value), digits)
