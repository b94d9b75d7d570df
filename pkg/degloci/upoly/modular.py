"""Random primes, Chinese remaindering and rational reconstruction."""

from __future__ import annotations

import random
from math import isqrt
from typing import Optional, Sequence

from sympy import nextprime
from sympy.ntheory.modular import crt
from sympy.polys.domains import QQ

from degloci.errors import InconsistentResidues, InsufficientPrecision
from degloci.logging import get_logger
from degloci.upoly.fields import QQ_FIELD
from degloci.upoly.poly import UPoly

logger = get_logger(__name__)


def random_prime(rng: random.Random, bits: int = 62, avoid: Sequence[int] = ()) -> int:
    """A prime with exactly ``bits`` bits, drawn deterministically from ``rng``."""
    while True:
        candidate = nextprime(rng.randrange(2 ** (bits - 1), 2**bits - 2**(bits // 2)))
        if candidate not in avoid and candidate < 2**bits:
            return int(candidate)


def rational_reconstruction(a: int, m: int, bound: Optional[int] = None):
    """The fraction n/d with |n|, d <= bound and n = a d mod m, or None.

    Extended Euclid on (m, a) stopped at the first remainder below the bound;
    the default bound isqrt(m // 2) makes the answer unique.
    """
    a %= m
    if bound is None:
        bound = isqrt(m // 2)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    num, den = (r1, t1) if t1 > 0 else (-r1, -t1)
    if (num - a * den) % m:
        return None
    return QQ(num, den)


def reconstruct_poly(poly: UPoly) -> Optional[UPoly]:
    """Rational preimage of a polynomial over Z/N, coefficientwise, or None."""
    return reconstruct_coeffs([int(c) for c in poly.coeffs], poly.domain.modulus)


def reconstruct_coeffs(residues: Sequence[int], modulus: int) -> Optional[UPoly]:
    coeffs = []
    for c in residues:
        value = rational_reconstruction(int(c), modulus)
        if value is None:
            return None
        coeffs.append(value)
    return UPoly.from_coeffs(QQ_FIELD, coeffs)


def crt_and_rational_reconstruction(residues: Sequence[UPoly]) -> UPoly:
    """Combine images over pairwise coprime moduli and lift to QQ[T].

    Raises InconsistentResidues when the images cannot come from one
    polynomial (degrees differ or a modulus repeats) and InsufficientPrecision
    when the combined modulus is too small for the coefficients.
    """
    if not residues:
        raise ValueError("no residues to combine")
    moduli = [r.domain.modulus for r in residues]
    if any(m is None for m in moduli):
        raise ValueError("residues must live over Z/N")
    if len(set(moduli)) != len(moduli):
        raise InconsistentResidues("the same modulus appears twice")
    degrees = {r.degree for r in residues}
    if len(degrees) != 1:
        raise InconsistentResidues(f"residues have different degrees {sorted(degrees)}")
    degree = degrees.pop()
    combined = 1
    for m in moduli:
        combined *= m
    coeffs = []
    for k in range(degree + 1):
        value, _ = crt(moduli, [int(r.coefficient(k)) for r in residues], check=True)
        coeffs.append(int(value))
    lifted = reconstruct_coeffs(coeffs, combined)
    if lifted is None or lifted.degree != degree:
        raise InsufficientPrecision(
            f"modulus of {combined.bit_length()} bits cannot reconstruct the coefficients"
        )
    logger.debug("rational reconstruction done", primes=len(moduli), degree=degree)
    return lifted
