import random

import pytest
from sympy import Poly, expand, resultant as sympy_resultant, symbols
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_mul

from degloci.errors import DivisorNotInvertible, InconsistentResidues, NonMonicInput
from degloci.upoly import (
    QQ_FIELD,
    PrimeField,
    QuotientRing,
    SeriesRing,
    UPoly,
    crt_and_rational_reconstruction,
    gcd,
    interpolate,
    is_squarefree,
    newton_series_lift,
    random_prime,
    rational,
    rational_reconstruction,
    resultant,
    resultant_with_parameter,
    sqf_part,
)
from degloci.upoly import linalg
from degloci.upoly.fields import kronecker_mul
from degloci.upoly.traces import kronecker_from_traces, power_sums

P = 1000003


def qq(*coeffs):
    return UPoly.from_coeffs(QQ_FIELD, coeffs)


def test_gcd_is_monic():
    f = qq(2, -3, 1) * qq(0, 2)  # 2T (T-1)(T-2)
    g = qq(-3, 2, 1)  # (T-1)(T+3)
    assert gcd(f, g) == qq(-1, 1)


def test_gcd_with_zero():
    f = qq(4, 2)
    assert gcd(f, UPoly.zero(QQ_FIELD)) == qq(2, 1)
    assert gcd(UPoly.zero(QQ_FIELD), f) == qq(2, 1)


def test_mixed_domains_rejected():
    with pytest.raises(ValueError):
        gcd(qq(1, 1), UPoly.from_coeffs(PrimeField(7), [1, 1]))


def test_squarefree_part():
    f = qq(-1, 1) * qq(-1, 1) * qq(2, 1)
    assert not is_squarefree(f)
    assert sqf_part(f) == qq(-1, 1) * qq(2, 1)


def test_resultant_matches_sympy():
    t = symbols("T")
    f_expr, g_expr = 3 * t**3 + 2 * t + 5, 4 * t**2 - t + 7
    expected = int(sympy_resultant(f_expr, g_expr, t))
    f = qq(*reversed(Poly(f_expr, t).all_coeffs()))
    g = qq(*reversed(Poly(g_expr, t).all_coeffs()))
    assert resultant(f, g) == rational(expected)
    assert resultant(f.reduce(P), g.reduce(P)) == expected % P


def test_resultant_of_zero():
    assert resultant(qq(1, 1).reduce(P), UPoly.zero(PrimeField(P))) == 0


def test_parametric_resultant():
    # f = T^2 - Y, g = T - 1: Res_T = 1 - Y
    f = [qq(0, -1), qq(0), qq(1)]
    g = [qq(-1), qq(1)]
    result = resultant_with_parameter(f, g)
    assert result.resultant == qq(1, -1)


def test_parametric_resultant_needs_monic():
    with pytest.raises(NonMonicInput):
        resultant_with_parameter([qq(1), qq(0, 1)], [qq(1), qq(1)])


def test_interpolate():
    points = [0, 1, 2, 5]
    values = [t**3 - 2 * t + 1 for t in points]
    assert interpolate(QQ_FIELD, points, values) == qq(1, -2, 0, 1)


def test_rational_reconstruction():
    m = 1000003 * 1000033
    a = 3 * pow(7, -1, m) % m
    assert rational_reconstruction(a, m) == rational("3/7")
    assert rational_reconstruction(0, m) == rational(0)


def test_crt_and_rational_reconstruction():
    poly = qq("3/7", "-5/11", 1)
    images = [poly.reduce(p) for p in (1000003, 1000033, 1000037)]
    assert crt_and_rational_reconstruction(images) == poly


def test_crt_rejects_degree_mismatch():
    with pytest.raises(InconsistentResidues):
        crt_and_rational_reconstruction([qq(1, 1).reduce(1000003), qq(1, 1, 1).reduce(1000033)])


def test_crt_rejects_repeated_modulus():
    with pytest.raises(InconsistentResidues):
        crt_and_rational_reconstruction([qq(1, 1).reduce(P), qq(1, 1).reduce(P)])


def test_random_prime_is_reproducible():
    first = random_prime(random.Random("seed"), bits=40)
    assert first == random_prime(random.Random("seed"), bits=40)
    assert first.bit_length() == 40
    assert random_prime(random.Random("seed"), bits=40, avoid=[first]) != first


def test_kronecker_mul_matches_schoolbook():
    rng = random.Random(3)
    f = [rng.randrange(P) for _ in range(40)]
    g = [rng.randrange(P) for _ in range(33)]
    f[0] = g[0] = 1
    assert kronecker_mul(f, g, P) == gf_mul(f, g, P, ZZ)


def test_quotient_ring_inverse():
    ring = QuotientRing(qq(1, 0, 1))  # T^2 + 1
    t = ring.variable()
    assert ring.equal(ring.mul(t, ring.inverse(t)), ring.one())
    assert ring.to_poly(ring.inverse(t)) == qq(0, -1)


def test_quotient_ring_zero_divisor():
    ring = QuotientRing(qq(-1, 0, 1).reduce(P))  # (T-1)(T+1)
    with pytest.raises(DivisorNotInvertible):
        ring.inverse(ring.from_poly(qq(-1, 1).reduce(P)))


def test_series_inverse():
    base = QuotientRing(qq(0, 1))
    ring = SeriesRing(base, 4)
    one_minus_t = ring.linear(base.one(), base.from_rational(-1))
    assert ring.inverse(one_minus_t) == tuple(base.one() for _ in range(4))


def test_newton_series_lift_square_root():
    base = QuotientRing(qq(0, 1))

    def system(ring, values):
        y = values[0]
        target = ring.linear(base.one(), base.one())
        return [ring.sub(ring.mul(y, y), target)], [[ring.add(y, y)]]

    (lifted,) = newton_series_lift(system, [base.one()], base, 4)
    expected = tuple(base.from_rational(c) for c in ("1", "1/2", "-1/8", "1/16"))
    assert lifted == expected


def test_berkowitz_charpoly_and_det():
    matrix = [[rational(1), rational(2)], [rational(3), rational(4)]]
    assert linalg.charpoly(QQ_FIELD, matrix) == [rational(1), rational(-5), rational(-2)]
    assert linalg.det(QQ_FIELD, matrix) == rational(-2)


def test_power_sums():
    assert power_sums(qq(2, -3, 1), 4) == [rational(v) for v in (2, 3, 5, 9)]


def test_kronecker_from_traces():
    # roots u = 1, 2 and y = u^2
    q, (w,) = kronecker_from_traces(
        QQ_FIELD, 2, [rational(2), rational(3), rational(5)], [[rational(5), rational(9)]]
    )
    assert q == [rational(2), rational(-3), rational(1)]
    assert w == [rational(-6), rational(5)]


def cofactor_det(matrix):
    if not matrix:
        return 1
    return sum(
        (-1) ** j * matrix[0][j] * cofactor_det([row[:j] + row[j + 1 :] for row in matrix[1:]])
        for j in range(len(matrix))
    )


@pytest.mark.parametrize("seed", range(12))
def test_berkowitz_det_matches_cofactor_expansion(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    matrix = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
    expected = cofactor_det(matrix)
    assert linalg.det(QQ_FIELD, [[rational(v) for v in row] for row in matrix]) == rational(expected)
    assert linalg.det(PrimeField(P), [[v % P for v in row] for row in matrix]) == expected % P


def sympy_coefficients(expr, variable):
    return [c for c in reversed(Poly(expr, variable).all_coeffs())]


@pytest.mark.parametrize("seed", range(6))
def test_parametric_resultant_matches_sympy(seed):
    rng = random.Random(seed)
    t, y = symbols("T Y")

    def coefficient():
        return sum(rng.randint(-3, 3) * y**k for k in range(rng.randint(1, 3)))

    m, n = rng.randint(1, 3), rng.randint(1, 3)
    f_expr = expand(t**m + sum(coefficient() * t**k for k in range(m)))
    g_expr = expand(rng.choice([1, 2, -1]) * t**n + sum(coefficient() * t**k for k in range(n)))
    f = [qq(*sympy_coefficients(f_expr.coeff(t, k), y)) for k in range(m + 1)]
    g = [qq(*sympy_coefficients(g_expr.coeff(t, k), y)) for k in range(n + 1)]
    expected = sympy_resultant(f_expr, g_expr, t)
    result = resultant_with_parameter(f, g)
    assert result.resultant == qq(*sympy_coefficients(expected, y))


def test_first_subresultant_by_hand():
    # f = T^2 - Y, g = T^2 - 3T + 2Y, g - f = -3T + 3Y
    result = resultant_with_parameter([qq(0, -1), qq(0), qq(1)], [qq(0, 2), qq(-3), qq(1)])
    assert result.s1 == qq(-3)
    assert result.s0 == qq(0, 3)


@pytest.mark.parametrize("c1,c2", [(1, 5), (-2, 3), (4, -7)])
def test_first_subresultant_vanishes_on_common_root(c1, c2):
    # f = (T - Y)(T - Y - c1), g = (T - Y)(T - c2) share exactly the root T = Y
    f = [qq(0, c1, 1), qq(-c1, -2), qq(1)]
    g = [qq(0, c2), qq(-c2, -1), qq(1)]
    result = resultant_with_parameter(f, g)
    assert result.resultant.is_zero()
    assert not result.s1.is_zero()
    assert (result.s1 * qq(0, 1) + result.s0).is_zero()


def test_reduction_goes_through_upoly():
    import degloci
    from degloci.upoly import modular

    assert not hasattr(modular, "reduce_poly")
    assert not hasattr(degloci, "solve_text")
    assert qq("1/2", 3).reduce(7) == UPoly.from_coeffs(PrimeField(7), [4, 3])
