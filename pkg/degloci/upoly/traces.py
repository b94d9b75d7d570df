"""Trace formulas: minimal polynomials and parameterizations from power sums.

For a squarefree monic Q of degree D with roots t_1..t_D, the trace of an
element a(T) of K[T]/(Q) is the sum of a(t_k). Given the traces of the powers
of a primitive element u and of the products y_j u^i, Newton's identities
recover the characteristic polynomial of u and the numerators W_j of the
parameterizations y_j = W_j(u) / Q_u'(u).
"""

from __future__ import annotations

from typing import Sequence

from sympy.polys.domains import QQ

from degloci.upoly.poly import UPoly
from degloci.upoly.rings import QuotientRing


def power_sums(modulus: UPoly, count: int) -> list:
    """p_0..p_(count-1), the power sums of the roots of a monic polynomial."""
    domain = modulus.domain
    d = modulus.degree
    c = modulus.coeffs  # low-to-high, c[d] == 1
    sums = [domain.convert(d)]
    for k in range(1, count):
        acc = domain.zero()
        for i in range(1, min(k, d) + 1):
            if i < k:
                acc = domain.add(acc, domain.mul(c[d - i], sums[k - i]))
        if k <= d:
            acc = domain.add(acc, domain.mul(domain.convert(k), c[d - k]))
        sums.append(domain.neg(acc))
    return sums


def trace(ring: QuotientRing, elem, sums: Sequence):
    """Tr(elem) for an element of ``ring`` given the power sums of its modulus."""
    domain = ring.domain
    acc = domain.zero()
    for i, coeff in enumerate(reversed(elem)):
        acc = domain.add(acc, domain.mul(coeff, sums[i]))
    return acc


def kronecker_from_traces(ctx, degree: int, u_traces: Sequence, y_traces: Sequence[Sequence]):
    """Characteristic polynomial of u and the parameterization numerators.

    ``ctx`` is any ring context with ``from_rational`` (a coefficient domain or a
    scalar series ring). ``u_traces[i]`` is Tr(u^i) for i = 0..degree and
    ``y_traces[j][i]`` is Tr(y_j u^i) for i = 0..degree-1. Returns the
    low-to-high coefficients of Q_u (monic, length degree+1) and of each W_j.
    """
    elementary = [ctx.one()]
    for k in range(1, degree + 1):
        acc = ctx.zero()
        for i in range(1, k + 1):
            term = ctx.mul(elementary[k - i], u_traces[i])
            acc = ctx.add(acc, term) if i % 2 == 1 else ctx.sub(acc, term)
        elementary.append(ctx.mul(acc, ctx.from_rational(QQ(1, k))))
    # coefficient of T^(degree-k) is (-1)^k e_k
    q = [None] * (degree + 1)
    for k in range(degree + 1):
        e = elementary[k]
        q[degree - k] = e if k % 2 == 0 else ctx.neg(e)
    numerators = []
    for traces in y_traces:
        w = []
        for k in range(degree):
            acc = ctx.zero()
            for i in range(k + 1, degree + 1):
                acc = ctx.add(acc, ctx.mul(q[i], traces[i - k - 1]))
            w.append(acc)
        numerators.append(w)
    return q, numerators
