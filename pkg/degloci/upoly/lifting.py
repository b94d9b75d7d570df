"""Quadratic Newton lifting of a parameterization in a free variable t."""

from __future__ import annotations

from typing import Callable, Sequence

from degloci.errors import DivisorNotInvertible, SingularJacobian
from degloci.upoly import linalg
from degloci.upoly.rings import QuotientRing, SeriesRing

# (series ring, current dependent values) -> (residuals, jacobian w.r.t. dependents)
SystemEvaluator = Callable[[SeriesRing, Sequence[tuple]], tuple[list, list[list]]]


def newton_series_lift(
    evaluate_system: SystemEvaluator,
    start: Sequence,
    base: QuotientRing,
    sigma: int,
) -> list[tuple]:
    """Lift ``start`` (a root of the system at t = 0) to a root modulo t^sigma.

    ``start`` holds one ``base`` element per dependent variable. Precision
    doubles at every step; each step recomputes the Jacobian inverse in the
    current series ring. Raises SingularJacobian when the Jacobian is not
    invertible.
    """
    ring = SeriesRing(base, 1)
    values = [ring.constant(v) for v in start]
    precision = 1
    while precision < sigma:
        precision = min(2 * precision, sigma)
        ring = SeriesRing(base, precision)
        values = [ring.resize(v) for v in values]
        residuals, jacobian = evaluate_system(ring, values)
        try:
            jinv = linalg.inverse(ring, jacobian)
        except DivisorNotInvertible as exc:
            raise SingularJacobian(f"jacobian not invertible at precision {precision}") from exc
        step = linalg.matvec(ring, jinv, residuals)
        values = [ring.sub(v, d) for v, d in zip(values, step)]
    return [SeriesRing(base, max(sigma, 1)).resize(v) for v in values]
