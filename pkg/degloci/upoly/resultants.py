"""Resultants of polynomials in T whose coefficients depend on a parameter Y."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from degloci.errors import NonMonicInput
from degloci.upoly import linalg
from degloci.upoly.poly import UPoly, interpolate, resultant


@dataclass(frozen=True)
class ParametricResultant:
    """Res_T(f, g) and the degree-1 subresultant s1*T + s0, all in K[Y]."""

    resultant: UPoly
    s1: UPoly
    s0: UPoly


def resultant_with_parameter(f: Sequence[UPoly], g: Sequence[UPoly]) -> ParametricResultant:
    """Eliminate T from f and g, given as coefficient lists (T^0 first) in K[Y].

    f must be monic in T. The result is obtained by specializing Y at enough
    points and interpolating. Signs follow the Sylvester matrix with the rows
    of f on top; g keeps its formal degree even where its leading coefficient
    vanishes.
    """
    f, g = _strip(f), list(g)
    if not f or not (f[-1].is_constant() and f[-1] == UPoly.constant(f[-1].domain, 1)):
        raise NonMonicInput("first argument must be monic in T")
    domain = f[-1].domain
    m, n = len(f) - 1, len(g) - 1
    deg_f = max(c.degree for c in f)
    deg_g = max((c.degree for c in g), default=0)
    bound = max(n * max(deg_f, 0) + m * max(deg_g, 0), 0)
    nodes = list(range(bound + 1))
    res_values, s1_values, s0_values = [], [], []
    for y in nodes:
        fy = UPoly.from_dense(domain, [c(y) for c in reversed(f)])
        gy_formal = [c(y) for c in reversed(g)]  # high-to-low, formal degree n
        res_values.append(resultant(fy, UPoly.from_dense(domain, gy_formal)) if n >= 0 else domain.zero())
        s1, s0 = _first_subresultant(domain, fy.to_dense(), gy_formal, m, n)
        s1_values.append(s1)
        s0_values.append(s0)
    return ParametricResultant(
        resultant=interpolate(domain, nodes, res_values),
        s1=interpolate(domain, nodes, s1_values),
        s0=interpolate(domain, nodes, s0_values),
    )


def _first_subresultant(domain, f: list, g: list, m: int, n: int):
    """Coefficients (s1, s0) of the degree-1 subresultant of f and g."""
    if m < 1 or n < 1 or m + n < 3:
        return domain.zero(), domain.zero()
    width = m + n - 1
    rows = []
    for shift in range(n - 2, -1, -1):
        rows.append(_shifted(domain, f, shift, width))
    for shift in range(m - 2, -1, -1):
        rows.append(_shifted(domain, g, shift, width))
    leading = width - 2  # columns of T^(width-1) .. T^2
    values = []
    for power in (1, 0):
        column = width - 1 - power
        square = [row[:leading] + [row[column]] for row in rows]
        values.append(linalg.det(domain, square))
    return values[0], values[1]


def _shifted(domain, dense: list, shift: int, width: int) -> list:
    row = [domain.zero()] * (width - len(dense) - shift) + list(dense) + [domain.zero()] * shift
    return row


def _strip(coeffs: Sequence[UPoly]) -> list[UPoly]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs
