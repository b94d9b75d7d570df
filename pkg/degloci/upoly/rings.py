"""Residue rings K[T]/(Q) and truncated power series over them.

All ring contexts here, the coefficient domains and the circuit builder share
one small protocol: ``zero() one() from_rational(c) add sub mul neg is_zero``
plus ``inverse`` where it makes sense. Circuit evaluation and the Berkowitz
routines only rely on that protocol.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from degloci.errors import DivisorNotInvertible
from degloci.upoly.fields import (
    KRONECKER_THRESHOLD,
    Domain,
    PrimeField,
    PrimePowerRing,
    pack,
    unpack,
)
from degloci.upoly.poly import UPoly, gcdex


@dataclass(frozen=True)
class QuotientRing:
    """K[T]/(Q) for a monic modulus Q; elements are reduced dense lists (high-to-low)."""

    modulus: UPoly
    _dense: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.modulus.is_monic():
            raise ValueError("quotient ring modulus must be monic")
        object.__setattr__(self, "_dense", tuple(self.modulus.to_dense()))

    @property
    def domain(self) -> Domain:
        return self.modulus.domain

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def zero(self) -> list:
        return []

    def one(self) -> list:
        return self.domain.dstrip([self.domain.one()]) if self.degree > 0 else []

    def from_rational(self, value) -> list:
        return self.reduce([self.domain.convert(value)])

    def from_scalar(self, value) -> list:
        return self.reduce([value])

    def from_poly(self, poly: UPoly) -> list:
        return self.reduce(poly.to_dense())

    def to_poly(self, elem) -> UPoly:
        return UPoly.from_dense(self.domain, elem)

    def variable(self) -> list:
        return self.reduce([self.domain.one(), self.domain.zero()])

    def reduce(self, dense) -> list:
        dense = self.domain.dstrip(dense)
        if len(dense) > self.degree:
            return self.domain.drem(dense, list(self._dense))
        return dense

    def add(self, a, b):
        return self.domain.dadd(a, b)

    def sub(self, a, b):
        return self.domain.dsub(a, b)

    def neg(self, a):
        return self.domain.dneg(a)

    def mul(self, a, b):
        if not a or not b:
            return []
        return self.reduce(self.domain.dmul(a, b))

    def scale(self, a, c):
        return self.domain.dscale(a, c)

    def is_zero(self, a) -> bool:
        return not a

    def equal(self, a, b) -> bool:
        return self.domain.dstrip(a) == self.domain.dstrip(b)

    def power(self, a, k: int):
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inverse(self, a):
        domain = self.domain
        if isinstance(domain, PrimePowerRing):
            return self._lifted_inverse(a, domain)
        s, _, h = gcdex(self.to_poly(a), self.modulus)
        if h.degree != 0:
            raise DivisorNotInvertible("element is a zero divisor of the quotient ring")
        return self.reduce(s.to_dense())

    def _lifted_inverse(self, a, domain: PrimePowerRing):
        """Invert modulo p, then Hensel-lift with x <- x(2 - a x)."""
        residue = QuotientRing(self.modulus.reduce_to(domain.residue_field))
        x = self.reduce(residue.inverse(residue.reduce(a)))
        two = self.from_rational(2)
        precision = 1
        while precision < domain.exponent:
            x = self.mul(x, self.sub(two, self.mul(a, x)))
            precision *= 2
        return x

    def derivative(self, a):
        return self.domain.ddiff(a)

    def evaluate_poly(self, poly: UPoly, at):
        """poly(at) inside the ring, by Horner."""
        result = self.zero()
        for c in reversed(poly.coeffs):
            result = self.add(self.mul(result, at), self.from_scalar(c))
        return result


@dataclass(frozen=True)
class SeriesRing:
    """Truncated power series A[t]/(t^sigma) over a quotient ring A.

    Elements are tuples of exactly ``sigma`` ring elements, constant term first.
    """

    base: QuotientRing
    sigma: int

    def zero(self) -> tuple:
        return tuple([] for _ in range(self.sigma))

    def one(self) -> tuple:
        return self.constant(self.base.one())

    def constant(self, c) -> tuple:
        return (c,) + tuple([] for _ in range(self.sigma - 1))

    def linear(self, c0, c1) -> tuple:
        """c0 + c1 t."""
        if self.sigma == 1:
            return (c0,)
        return (c0, c1) + tuple([] for _ in range(self.sigma - 2))

    def from_rational(self, value) -> tuple:
        return self.constant(self.base.from_rational(value))

    def resize(self, a: Sequence) -> tuple:
        a = tuple(a[: self.sigma])
        return a + tuple([] for _ in range(self.sigma - len(a)))

    def add(self, a, b) -> tuple:
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a) -> tuple:
        return tuple(self.base.neg(x) for x in a)

    def is_zero(self, a) -> bool:
        return all(not x for x in a)

    def mul(self, a, b) -> tuple:
        modulus = self.base.domain.modulus
        if modulus is not None and self.sigma * self.base.degree >= KRONECKER_THRESHOLD:
            return self._packed_mul(a, b, modulus)
        out = []
        for k in range(self.sigma):
            acc = []
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = self.base.domain.dadd(acc, self.base.domain.dmul(a[i], b[k - i]))
            out.append(self.base.reduce(acc))
        return tuple(out)

    def _packed_mul(self, a, b, modulus: int) -> tuple:
        # bivariate Kronecker substitution: T-blocks of 2D-1 slots, one per power of t
        width_d = max(self.base.degree, 1)
        stride = 2 * width_d - 1
        terms = self.sigma * width_d
        width = (2 * modulus.bit_length() + terms.bit_length() + 8) // 8

        def flatten(x):
            slots = []
            for coeff in x:
                low = list(reversed(coeff)) + [0] * (width_d - len(coeff))
                slots.extend(low + [0] * (stride - width_d))
            return slots

        count = self.sigma * stride
        prod = pack(flatten(a), width) * pack(flatten(b), width)
        prod &= (1 << (8 * width * count)) - 1
        slots = unpack(prod, count, width)
        out = []
        for k in range(self.sigma):
            block = slots[k * stride : (k + 1) * stride]
            out.append(self.base.reduce([c % modulus for c in reversed(block)]))
        return tuple(out)

    def scale(self, a, c) -> tuple:
        """Multiply every coefficient by the base-ring element ``c``."""
        return tuple(self.base.mul(x, c) for x in a)

    def inverse(self, a) -> tuple:
        """Newton iteration b <- b + b(1 - a b) with doubling precision."""
        b = SeriesRing(self.base, 1).constant(self.base.inverse(a[0]))
        precision = 1
        while precision < self.sigma:
            precision = min(2 * precision, self.sigma)
            ring = SeriesRing(self.base, precision)
            b = ring.resize(b)
            err = ring.sub(ring.one(), ring.mul(ring.resize(a), b))
            b = ring.add(b, ring.mul(b, err))
        return self.resize(b)


@dataclass(frozen=True)
class ScalarSeriesRing:
    """K[t]/(t^sigma) over a coefficient domain; elements are tuples of scalars."""

    domain: Domain
    sigma: int

    def zero(self) -> tuple:
        return (self.domain.zero(),) * self.sigma

    def one(self) -> tuple:
        return self.constant(self.domain.one())

    def constant(self, c) -> tuple:
        return (c,) + (self.domain.zero(),) * (self.sigma - 1)

    def from_rational(self, value) -> tuple:
        return self.constant(self.domain.convert(value))

    def add(self, a, b) -> tuple:
        return tuple(self.domain.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        return tuple(self.domain.sub(x, y) for x, y in zip(a, b))

    def neg(self, a) -> tuple:
        return tuple(self.domain.neg(x) for x in a)

    def is_zero(self, a) -> bool:
        return all(self.domain.is_zero(x) for x in a)

    def mul(self, a, b) -> tuple:
        dense = self.domain.dmul(list(reversed(a)), list(reversed(b)))
        low = list(reversed(dense))[: self.sigma]
        return tuple(low) + (self.domain.zero(),) * (self.sigma - len(low))

    def to_poly(self, a) -> UPoly:
        return UPoly.from_dense(self.domain, list(reversed(a)))


def is_modular(domain: Domain) -> bool:
    return isinstance(domain, (PrimeField, PrimePowerRing))
