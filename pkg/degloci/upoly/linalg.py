"""Division-free linear algebra over any commutative ring context.

Berkowitz' algorithm only adds, subtracts and multiplies, so the same code
serves quotient rings, power series rings and the circuit builder (where it
produces determinant circuits).
"""

from __future__ import annotations

from typing import Any, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from degloci.upoly.fields import rational

Matrix = Sequence[Sequence[Any]]


def charpoly(ring, a: Matrix) -> list:
    """Coefficients ``[1, c1, ..., cn]`` of det(xI - a), by Berkowitz."""
    n = len(a)
    if n == 0:
        return [ring.one()]
    poly = [ring.one(), ring.neg(a[n - 1][n - 1])]
    for k in range(n - 2, -1, -1):
        m = n - k - 1
        row = [a[k][j] for j in range(k + 1, n)]
        col = [a[i][k] for i in range(k + 1, n)]
        block = [[a[i][j] for j in range(k + 1, n)] for i in range(k + 1, n)]
        toeplitz = [ring.one(), ring.neg(a[k][k])]
        vec = col
        for _ in range(m):
            toeplitz.append(ring.neg(_dot(ring, row, vec)))
            vec = matvec(ring, block, vec)
        new = []
        for i in range(m + 2):
            acc = ring.zero()
            for l in range(max(0, i - len(toeplitz) + 1), min(i, m) + 1):
                acc = ring.add(acc, ring.mul(toeplitz[i - l], poly[l]))
            new.append(acc)
        poly = new
    return poly


def det(ring, a: Matrix):
    n = len(a)
    if n == 0:
        return ring.one()
    c = charpoly(ring, a)[n]
    return c if n % 2 == 0 else ring.neg(c)


def adjugate(ring, a: Matrix) -> list[list]:
    """adj(a) = (-1)^(n+1) (a^(n-1) + c1 a^(n-2) + ... + c_(n-1) I)."""
    n = len(a)
    coeffs = charpoly(ring, a)
    acc = identity(ring, n)
    for k in range(1, n):
        acc = matmul(ring, a, acc)
        for i in range(n):
            acc[i][i] = ring.add(acc[i][i], coeffs[k])
    if n % 2 == 1:
        return acc
    return [[ring.neg(x) for x in row] for row in acc]


def inverse(ring, a: Matrix) -> list[list]:
    """adj(a) times det(a)^-1; the ring raises when det(a) is not a unit."""
    scale = ring.inverse(det(ring, a))
    return [[ring.mul(x, scale) for x in row] for row in adjugate(ring, a)]


def identity(ring, n: int) -> list[list]:
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def matmul(ring, a: Matrix, b: Matrix) -> list[list]:
    cols = len(b[0]) if b else 0
    return [[_dot(ring, row, [b[k][j] for k in range(len(b))]) for j in range(cols)] for row in a]


def matvec(ring, a: Matrix, v: Sequence) -> list:
    return [_dot(ring, row, v) for row in a]


def _dot(ring, u: Sequence, v: Sequence):
    acc = ring.zero()
    for x, y in zip(u, v):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


# exact rational matrices


def rational_matrix(rows: Matrix) -> DomainMatrix:
    rows = [[rational(x) for x in row] for row in rows]
    n, m = len(rows), len(rows[0]) if rows else 0
    return DomainMatrix(rows, (n, m), QQ)


def rational_inverse(rows: Matrix) -> list[list]:
    return rational_matrix(rows).inv().to_list()


def rational_det(rows: Matrix):
    return rational_matrix(rows).det()


def rational_rank(rows: Matrix) -> int:
    if not rows or not rows[0]:
        return 0
    return rational_matrix(rows).rank()


def rational_matmul(a: Matrix, b: Matrix) -> list[list]:
    return (rational_matrix(a) * rational_matrix(b)).to_list()
