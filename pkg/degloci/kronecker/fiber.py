"""Lifting fibres and geometric resolutions.

A lifting fibre of a variety of dimension m is given in coordinates Y with
X = M Y. Its free coordinates Y_1..Y_m are fixed at the lifting point z; the
dependent coordinates are parameterized by v_j(T) over the roots of Q, and the
primitive element lambda . (v_(m+1), ..., v_n) equals T modulo Q.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from degloci.circuit import Circuit, RingPoint, evaluate, value_and_jacobian
from degloci.errors import DivisorNotInvertible, InvariantViolation
from degloci.upoly import linalg
from degloci.upoly.fields import Domain, PrimeField, format_rational, rational
from degloci.upoly.poly import UPoly, is_squarefree
from degloci.upoly.rings import QuotientRing


class _Empty:
    """The empty variety; a value, not an error."""

    _instance: Optional["_Empty"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> dict:
        return {"empty": True}


EMPTY = _Empty()


def identity_matrix(n: int) -> tuple[tuple, ...]:
    return tuple(tuple(rational(1 if i == j else 0) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class LiftingFiber:
    domain: Domain
    circuit: Circuit
    system: tuple[str, ...]
    coords: tuple[tuple, ...]  # rational M, X = M Y
    lifting_point: tuple  # z, domain elements
    primitive: tuple  # lambda over the dependent coordinates, domain elements
    minimal_poly: UPoly
    params: tuple[UPoly, ...]

    @property
    def n(self) -> int:
        return self.circuit.n

    @property
    def dimension(self) -> int:
        return len(self.lifting_point)

    @property
    def degree(self) -> int:
        return self.minimal_poly.degree

    @property
    def dependents(self) -> range:
        return range(self.dimension, self.n)

    def quotient(self) -> QuotientRing:
        return QuotientRing(self.minimal_poly)

    def coord_matrix(self) -> list[list]:
        return [[self.domain.convert(c) for c in row] for row in self.coords]

    def dependent_directions(self) -> list[list]:
        """Columns of M for the dependent coordinates: d X / d Y_j."""
        return [[self.coords[i][j] for i in range(self.n)] for j in self.dependents]

    def y_point(self, ring: QuotientRing) -> list:
        free = [ring.from_scalar(c) for c in self.lifting_point]
        return free + [ring.from_poly(v) for v in self.params]

    def x_point(self, ring: QuotientRing) -> RingPoint:
        return RingPoint.of(ring, to_x(ring, self.coords, self.y_point(ring)))

    def residuals(self) -> list:
        ring = self.quotient()
        return evaluate(self.circuit, self.x_point(ring), self.system)

    def evaluate_outputs(self, names: Sequence[str]) -> list[UPoly]:
        ring = self.quotient()
        return [ring.to_poly(v) for v in evaluate(self.circuit, self.x_point(ring), names)]

    def with_system(self, system: Sequence[str]) -> "LiftingFiber":
        return replace(self, system=tuple(system))

    def to_dict(self) -> dict:
        return {
            "domain": self.domain.name,
            "dimension": self.dimension,
            "system": list(self.system),
            "coords": [[format_rational(c) for c in row] for row in self.coords],
            "lifting_point": [self.domain.format(c) for c in self.lifting_point],
            "primitive": [self.domain.format(c) for c in self.primitive],
            "minimal_poly": self.minimal_poly.canonical(),
            "params": [v.canonical() for v in self.params],
        }


def to_x(ring, coords: Sequence[Sequence], y: Sequence) -> list:
    """X = M Y inside ``ring``."""
    out = []
    for row in coords:
        acc = ring.zero()
        for c, value in zip(row, y):
            if c:
                acc = ring.add(acc, ring.mul(ring.from_rational(c), value))
        out.append(acc)
    return out


def check_fiber(fiber: LiftingFiber) -> None:
    """Squarefree Q, zero residuals, primitive identity, invertible Jacobian."""
    q = fiber.minimal_poly
    if q.degree <= 0:
        return
    if not q.is_monic():
        raise InvariantViolation("minimal polynomial is not monic")
    if not is_squarefree(q):
        raise InvariantViolation("minimal polynomial is not squarefree")
    if len(fiber.system) != fiber.n - fiber.dimension:
        raise InvariantViolation(
            f"{len(fiber.system)} equations for {fiber.n - fiber.dimension} dependent coordinates"
        )
    ring = fiber.quotient()
    if any(v.degree >= q.degree for v in fiber.params):
        raise InvariantViolation("parameterization not reduced modulo Q")
    point = fiber.x_point(ring)
    values, jacobian = value_and_jacobian(
        fiber.circuit, point, fiber.system, fiber.dependent_directions()
    )
    if any(not ring.is_zero(v) for v in values):
        raise InvariantViolation("lifting system does not vanish on the fibre")
    u = ring.zero()
    for lam, v in zip(fiber.primitive, fiber.params):
        u = ring.add(u, ring.mul(ring.from_scalar(lam), ring.from_poly(v)))
    if not ring.equal(u, ring.variable()):
        raise InvariantViolation("primitive element does not reproduce T")
    try:
        ring.inverse(linalg.det(ring, jacobian))
    except DivisorNotInvertible:
        raise InvariantViolation("jacobian of the lifting system is singular") from None


@dataclass(frozen=True)
class GeometricResolution:
    """Points (Q_1(t), ..., Q_n(t)) over the roots t of P, in X coordinates.

    ``primitive`` holds the coefficients of u = sum u_i X_i with u(Q(T)) = T.
    """

    polynomial: UPoly
    params: tuple[UPoly, ...]
    primitive: tuple

    @property
    def domain(self) -> Domain:
        return self.polynomial.domain

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def n(self) -> int:
        return len(self.params)

    def quotient(self) -> QuotientRing:
        return QuotientRing(self.polynomial)

    def point(self, ring: Optional[QuotientRing] = None) -> RingPoint:
        ring = ring or self.quotient()
        return RingPoint.of(ring, [ring.from_poly(v) for v in self.params])

    def reduce(self, prime: int) -> "GeometricResolution":
        field = PrimeField(prime)
        return GeometricResolution(
            polynomial=self.polynomial.reduce_to(field),
            params=tuple(v.reduce_to(field) for v in self.params),
            primitive=tuple(field.convert(c) for c in self.primitive),
        )

    def to_dict(self) -> dict:
        return {
            "domain": self.domain.name,
            "degree": self.degree,
            "P": self.polynomial.canonical(),
            "Q": [v.canonical() for v in self.params],
            "u": [self.domain.format(c) for c in self.primitive],
        }

    def to_text(self, variables: Optional[Sequence[str]] = None) -> str:
        names = list(variables or [f"X{i + 1}" for i in range(self.n)])
        lines = [f"P = {self.polynomial}"]
        for name, v in zip(names, self.params):
            lines.append(f"{name} = {v}")
        form = " + ".join(
            f"{self.domain.format(c)}*{name}"
            for c, name in zip(self.primitive, names)
            if not self.domain.is_zero(c)
        )
        lines.append(f"T = {form or '0'}")
        return "\n".join(lines)


def to_resolution(fiber: LiftingFiber) -> GeometricResolution:
    """Express a zero-dimensional fibre in the original X coordinates."""
    if fiber.dimension != 0:
        raise ValueError("only zero-dimensional fibres have a geometric resolution")
    domain = fiber.domain
    q = fiber.minimal_poly
    x_params = []
    for row in fiber.coords:
        acc = UPoly.zero(domain)
        for c, v in zip(row, fiber.params):
            if c:
                acc = acc + v.scale(c)
        x_params.append(acc)
    inverse = linalg.rational_inverse(fiber.coords)
    primitive = []
    for i in range(fiber.n):
        acc = domain.zero()
        for j, lam in enumerate(fiber.primitive):
            acc = domain.add(acc, domain.mul(lam, domain.convert(inverse[j][i])))
        primitive.append(acc)
    return GeometricResolution(q, tuple(x_params), tuple(primitive))
