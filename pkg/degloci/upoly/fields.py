"""Coefficient domains for the univariate kernels.

Each domain is a small frozen object that knows how to convert rational
constants, do scalar arithmetic and run the dense polynomial kernels of
``sympy.polys``. Dense polynomials handed to the ``d*`` methods are lists of
coefficients from the highest degree down, the convention of ``densearith``
and ``galoistools``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import sympy
from sympy.polys.densearith import (
    dup_add,
    dup_div,
    dup_mul,
    dup_mul_ground,
    dup_neg,
    dup_quo,
    dup_rem,
    dup_sub,
)
from sympy.polys.densebasic import dup_strip
from sympy.polys.densetools import dup_compose, dup_diff, dup_eval, dup_monic
from sympy.polys.domains import QQ, ZZ
from sympy.polys.euclidtools import dup_gcd, dup_gcdex, dup_resultant
from sympy.polys.galoistools import (
    gf_add,
    gf_compose,
    gf_diff,
    gf_div,
    gf_eval,
    gf_gcd,
    gf_gcdex,
    gf_monic,
    gf_mul,
    gf_mul_ground,
    gf_neg,
    gf_quo,
    gf_rem,
    gf_sqf_part,
    gf_strip,
    gf_sub,
)
from sympy.polys.sqfreetools import dup_sqf_part

from degloci.errors import DivisorNotInvertible

# below this length schoolbook products beat integer packing
KRONECKER_THRESHOLD = 24


def rational(value: Any):
    """Convert ints, Fractions, sympy numbers, strings and QQ elements to QQ."""
    if isinstance(value, sympy.Rational):
        return QQ(int(value.p), int(value.q))
    if isinstance(value, str):
        frac = Fraction(value)
        return QQ(frac.numerator, frac.denominator)
    if isinstance(value, int):
        return QQ(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return QQ(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def format_rational(value) -> str:
    q = rational(value)
    if int(q.denominator) == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


def _slot_bytes(modulus: int, terms: int) -> int:
    bits = 2 * modulus.bit_length() + terms.bit_length() + 1
    return (bits + 7) // 8


def pack(coeffs: Sequence[int], width: int) -> int:
    """Pack nonnegative low-to-high coefficients into one integer."""
    return int.from_bytes(b"".join(int(c).to_bytes(width, "little") for c in coeffs), "little")


def unpack(value: int, count: int, width: int) -> list[int]:
    raw = value.to_bytes(count * width, "little")
    return [int.from_bytes(raw[i * width : (i + 1) * width], "little") for i in range(count)]


def kronecker_mul(f: list, g: list, modulus: int) -> list[int]:
    """Product of two dense (high-to-low) polynomials mod ``modulus``.

    Coefficients are packed into Python integers so that a single big-integer
    multiplication does the convolution.
    """
    if not f or not g:
        return []
    width = _slot_bytes(modulus, min(len(f), len(g)))
    a = pack(reversed(f), width)
    b = pack(reversed(g), width)
    count = len(f) + len(g) - 1
    low_to_high = unpack(a * b, count, width)
    return gf_strip([c % modulus for c in reversed(low_to_high)])


@dataclass(frozen=True)
class RationalField:
    """The rationals, elements are ``QQ`` domain elements."""

    modulus = None
    is_field = True
    name = "QQ"

    def zero(self):
        return QQ.zero

    def one(self):
        return QQ.one

    def convert(self, value):
        return rational(value)

    from_rational = convert

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return not a

    def inverse(self, a):
        if not a:
            raise DivisorNotInvertible("division by zero in QQ")
        return QQ.one / a

    def to_rational(self, a):
        return a

    def format(self, a) -> str:
        return format_rational(a)

    # dense kernels

    def dstrip(self, f):
        return dup_strip(list(f))

    def dadd(self, f, g):
        return dup_add(f, g, QQ)

    def dsub(self, f, g):
        return dup_sub(f, g, QQ)

    def dneg(self, f):
        return dup_neg(f, QQ)

    def dscale(self, f, c):
        return dup_mul_ground(f, c, QQ)

    def dmul(self, f, g):
        return dup_mul(f, g, QQ)

    def drem(self, f, g):
        return dup_rem(f, g, QQ)

    def ddivmod(self, f, g):
        return dup_div(f, g, QQ)

    def dquo(self, f, g):
        return dup_quo(f, g, QQ)

    def dmonic(self, f):
        return dup_monic(f, QQ) if f else []

    def dgcd(self, f, g):
        return self.dmonic(dup_gcd(f, g, QQ))

    def dgcdex(self, f, g):
        return dup_gcdex(f, g, QQ)

    def ddiff(self, f):
        return dup_diff(f, 1, QQ)

    def deval(self, f, a):
        return dup_eval(f, a, QQ)

    def dsqf_part(self, f):
        return self.dmonic(dup_sqf_part(f, QQ)) if f else []

    def dresultant(self, f, g):
        return dup_resultant(f, g, QQ)

    def dcompose(self, f, g):
        return dup_compose(f, g, QQ)


@dataclass(frozen=True)
class _ModularDomain:
    modulus: int

    def zero(self):
        return 0

    def one(self):
        return 1 % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def is_zero(self, a) -> bool:
        return a % self.modulus == 0

    def convert(self, value) -> int:
        if isinstance(value, int) or ZZ.of_type(value):
            return int(value) % self.modulus
        q = rational(value)
        num, den = int(q.numerator), int(q.denominator)
        try:
            return num * pow(den, -1, self.modulus) % self.modulus
        except ValueError:
            raise DivisorNotInvertible(
                f"denominator {den} is not invertible modulo {self.modulus}"
            ) from None

    from_rational = convert

    def inverse(self, a) -> int:
        try:
            return pow(int(a), -1, self.modulus)
        except ValueError:
            raise DivisorNotInvertible(f"{a} is not invertible modulo {self.modulus}") from None

    def symmetric(self, a) -> int:
        a = int(a) % self.modulus
        return a - self.modulus if a > self.modulus // 2 else a

    def format(self, a) -> str:
        return str(int(a) % self.modulus)

    # dense kernels shared by F_p and Z/p^k: galoistools only inverts the
    # leading coefficient of the divisor, so monic divisors work for p^k too

    def dstrip(self, f):
        return gf_strip([int(c) % self.modulus for c in f])

    def dadd(self, f, g):
        return gf_add(f, g, self.modulus, ZZ)

    def dsub(self, f, g):
        return gf_sub(f, g, self.modulus, ZZ)

    def dneg(self, f):
        return gf_neg(f, self.modulus, ZZ)

    def dscale(self, f, c):
        return gf_mul_ground(f, int(c) % self.modulus, self.modulus, ZZ)

    def dmul(self, f, g):
        if min(len(f), len(g)) < KRONECKER_THRESHOLD:
            return gf_mul(f, g, self.modulus, ZZ)
        return kronecker_mul(f, g, self.modulus)

    def drem(self, f, g):
        return gf_rem(f, g, self.modulus, ZZ)

    def ddivmod(self, f, g):
        return gf_div(f, g, self.modulus, ZZ)

    def dquo(self, f, g):
        return gf_quo(f, g, self.modulus, ZZ)

    def ddiff(self, f):
        return gf_diff(f, self.modulus, ZZ)

    def deval(self, f, a):
        return int(gf_eval(f, int(a) % self.modulus, self.modulus, ZZ))

    def dcompose(self, f, g):
        return gf_compose(f, g, self.modulus, ZZ)


@dataclass(frozen=True)
class PrimeField(_ModularDomain):
    """The prime field F_p, elements are ints in ``[0, p)``."""

    is_field = True

    @property
    def name(self) -> str:
        return f"GF({self.modulus})"

    @property
    def characteristic(self) -> int:
        return self.modulus

    def dmonic(self, f):
        return gf_monic(f, self.modulus, ZZ)[1] if f else []

    def dgcd(self, f, g):
        return gf_gcd(f, g, self.modulus, ZZ)

    def dgcdex(self, f, g):
        return gf_gcdex(f, g, self.modulus, ZZ)

    def dsqf_part(self, f):
        return gf_sqf_part(f, self.modulus, ZZ) if f else []

    def dresultant(self, f, g) -> int:
        """Euclidean resultant, the Sylvester determinant with ``f`` rows on top."""
        p = self.modulus
        f, g = gf_strip(list(f)), gf_strip(list(g))
        if not f or not g:
            return 0
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return pow(int(g[0]), m, p)
        if m == 0:
            return pow(int(f[0]), n, p)
        res = 1
        while n > 0:
            r = gf_rem(f, g, p, ZZ)
            if not r:
                return 0
            k = len(r) - 1
            if (m * n) % 2:
                res = -res
            res = res * pow(int(g[0]), m - k, p) % p
            f, g, m, n = g, r, n, k
        return res * pow(int(g[0]), m, p) % p


@dataclass(frozen=True)
class PrimePowerRing(_ModularDomain):
    """Z/p^k, the working ring of p-adic lifting; not a field."""

    prime: int = 2
    exponent: int = 1
    is_field = False

    @classmethod
    def of(cls, prime: int, exponent: int) -> "PrimePowerRing":
        return cls(modulus=prime**exponent, prime=prime, exponent=exponent)

    @property
    def name(self) -> str:
        return f"Z/{self.prime}^{self.exponent}"

    @property
    def residue_field(self) -> PrimeField:
        return PrimeField(self.prime)

    def dmonic(self, f):
        if not f:
            return []
        return self.dscale(f, self.inverse(f[0]))


Domain = RationalField | PrimeField | PrimePowerRing

QQ_FIELD = RationalField()
