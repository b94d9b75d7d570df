"""Dense univariate polynomials over a coefficient domain."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from degloci.upoly.fields import QQ_FIELD, Domain, PrimeField


@dataclass(frozen=True)
class UPoly:
    """Immutable polynomial in T; ``coeffs`` run from degree 0 upwards.

    The leading coefficient is nonzero unless the polynomial is zero, which is
    stored as the empty tuple.
    """

    domain: Domain
    coeffs: tuple = ()

    @classmethod
    def from_dense(cls, domain: Domain, dense: Sequence) -> "UPoly":
        return cls(domain, tuple(reversed(domain.dstrip(dense))))

    @classmethod
    def from_coeffs(cls, domain: Domain, coeffs: Iterable[Any]) -> "UPoly":
        """Build from low-to-high coefficients given as ints, rationals or strings."""
        values = [domain.convert(c) for c in coeffs]
        return cls.from_dense(domain, list(reversed(values)))

    @classmethod
    def zero(cls, domain: Domain) -> "UPoly":
        return cls(domain, ())

    @classmethod
    def constant(cls, domain: Domain, value) -> "UPoly":
        return cls.from_coeffs(domain, [value])

    @classmethod
    def variable(cls, domain: Domain) -> "UPoly":
        return cls.from_coeffs(domain, [0, 1])

    def to_dense(self) -> list:
        return list(reversed(self.coeffs))

    def _wrap(self, dense) -> "UPoly":
        return UPoly.from_dense(self.domain, dense)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.domain.zero()

    def coefficient(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.domain.zero()

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.domain.one()

    def __add__(self, other: "UPoly") -> "UPoly":
        return self._wrap(self.domain.dadd(self.to_dense(), other.to_dense()))

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self._wrap(self.domain.dsub(self.to_dense(), other.to_dense()))

    def __neg__(self) -> "UPoly":
        return self._wrap(self.domain.dneg(self.to_dense()))

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return self._wrap(self.domain.dmul(self.to_dense(), other.to_dense()))
        return self.scale(other)

    def scale(self, c) -> "UPoly":
        return self._wrap(self.domain.dscale(self.to_dense(), self.domain.convert(c)))

    def __divmod__(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = self.domain.ddivmod(self.to_dense(), other.to_dense())
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        return self._wrap(self.domain.drem(self.to_dense(), other.to_dense()))

    def __call__(self, value):
        return self.domain.deval(self.to_dense(), self.domain.convert(value))

    def derivative(self) -> "UPoly":
        return self._wrap(self.domain.ddiff(self.to_dense()))

    def monic(self) -> "UPoly":
        return self._wrap(self.domain.dmonic(self.to_dense()))

    def compose(self, other: "UPoly") -> "UPoly":
        return self._wrap(self.domain.dcompose(self.to_dense(), other.to_dense()))

    def shift(self, a) -> "UPoly":
        """f(T + a)."""
        return self.compose(UPoly.from_coeffs(self.domain, [a, 1]))

    def reduce(self, prime: int) -> "UPoly":
        """Image of a rational polynomial in F_p[T]."""
        target = PrimeField(prime)
        return UPoly.from_coeffs(target, self.coeffs)

    def reduce_to(self, domain: Domain) -> "UPoly":
        return UPoly.from_coeffs(domain, self.coeffs)

    def canonical(self) -> list[str]:
        return [self.domain.format(c) for c in self.coeffs]

    def to_dict(self) -> dict:
        return {"domain": self.domain.name, "coeffs": self.canonical()}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if self.domain.is_zero(c):
                continue
            text = self.domain.format(c)
            if k == 0:
                terms.append(text)
            else:
                power = "T" if k == 1 else f"T^{k}"
                terms.append(power if text == "1" else f"{text}*{power}")
        return " + ".join(terms).replace("+ -", "- ")


def gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd; gcd(f, 0) = monic(f)."""
    _same_domain(f, g)
    if g.is_zero():
        return f.monic()
    if f.is_zero():
        return g.monic()
    return f._wrap(f.domain.dgcd(f.to_dense(), g.to_dense()))


def gcdex(f: UPoly, g: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """(s, t, h) with s*f + t*g = h = gcd(f, g)."""
    _same_domain(f, g)
    s, t, h = f.domain.dgcdex(f.to_dense(), g.to_dense())
    return f._wrap(s), f._wrap(t), f._wrap(h)


def sqf_part(f: UPoly) -> UPoly:
    return f._wrap(f.domain.dsqf_part(f.to_dense()))


def is_squarefree(f: UPoly) -> bool:
    if f.degree <= 0:
        return True
    return gcd(f, f.derivative()).degree == 0


def resultant(f: UPoly, g: UPoly):
    """Sylvester-matrix determinant with the rows of ``f`` on top."""
    _same_domain(f, g)
    return f.domain.dresultant(f.to_dense(), g.to_dense())


def interpolate(domain: Domain, xs: Sequence, ys: Sequence) -> UPoly:
    """Newton divided-difference interpolation through ``(xs[i], ys[i])``."""
    if len(xs) != len(ys):
        raise ValueError("interpolate needs as many values as nodes")
    xs = [domain.convert(x) for x in xs]
    table = [domain.convert(y) for y in ys]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            step = domain.sub(xs[i], xs[i - level])
            diff = domain.sub(table[i], table[i - 1])
            table[i] = domain.mul(diff, domain.inverse(step))
    result = UPoly.zero(domain)
    for i in range(n - 1, -1, -1):
        result = result * UPoly.from_dense(domain, [domain.one(), domain.neg(xs[i])])
        result = result + UPoly.from_dense(domain, [table[i]])
    return result


def product(factors: Iterable[UPoly], domain: Domain = QQ_FIELD) -> UPoly:
    result = UPoly.constant(domain, 1)
    for factor in factors:
        result = result * factor
    return result


def _same_domain(f: UPoly, g: UPoly) -> None:
    if f.domain != g.domain:
        raise ValueError(f"mixed coefficient domains {f.domain.name} and {g.domain.name}")


__all__ = [
    "UPoly",
    "gcd",
    "gcdex",
    "sqf_part",
    "is_squarefree",
    "resultant",
    "interpolate",
    "product",
]
