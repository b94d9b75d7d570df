import random

import pytest
from sympy import Rational, degree, expand, resultant, sqf_part, symbols, sympify

from degloci.applications import (
    PolarTask,
    composition_problem,
    generic_fiber,
    homotopy_count,
    polar_problem,
    polar_sample_points,
    real_points,
    sphere_task,
)
from degloci.degeneracy import membership_test, solve
from degloci.errors import NotOnVariety
from degloci.kronecker import GeometricResolution
from degloci.upoly import QQ_FIELD, UPoly, rational

A = ((1, 2, 3), (2, 1, 3))


def test_sphere_closed_form():
    polar = polar_sample_points(sphere_task(A), seed=11)
    resolution = polar.result.resolution
    assert resolution.degree == 2
    ring = resolution.quotient()
    x1, x2, x3 = (ring.from_poly(v) for v in resolution.params)
    # (a11^2/a13^2 + a12^2/a13^2 + 1) X3^2 - 1 with a_1 = (1, 2, 3)
    closed = ring.sub(ring.mul(ring.from_rational("14/9"), ring.mul(x3, x3)), ring.one())
    assert ring.is_zero(closed)
    assert ring.equal(ring.mul(ring.from_rational(3), x1), x3)
    assert ring.equal(ring.mul(ring.from_rational(3), x2), ring.mul(ring.from_rational(2), x3))
    assert len(polar.points) == 2


def test_sphere_membership():
    problem = polar_problem(sphere_task(A), seed=11)
    assert membership_test(problem, 2, (1, 0, 0)) is False
    with pytest.raises(NotOnVariety):
        membership_test(problem, 2, (0, 0, 0))


def test_sphere_point_on_axis():
    problem = polar_problem(sphere_task(((1, 0, 0), (0, 1, 0))), seed=11)
    assert membership_test(problem, 2, (1, 0, 0)) is True


def qq(*coeffs):
    return UPoly.from_coeffs(QQ_FIELD, coeffs)


def diagonal(square, coordinates):
    """The points X_j = c_j T over T^2 = square."""
    t = qq(0, 1)
    params = tuple(t.scale(rational(c)) for c in coordinates)
    return GeometricResolution(qq(f"-{square}", 0, 1), params, (rational(1), rational(0), rational(0)))


# W(a_1) is the equator X3 = 0, W(a_2) the two points (+-1, 0, 0)
@pytest.mark.parametrize(
    "point,on_equator",
    [
        ((0, 0, 1), False),
        ((0, 1, 0), True),
        (("3/5", "4/5", 0), True),
        (("2/7", "3/7", "6/7"), False),
        (diagonal("1/2", (1, 1, 0)), True),
        (diagonal("1/3", (1, 1, 1)), False),
    ],
)
def test_sphere_points_off_the_polar_points(point, on_equator):
    problem = polar_problem(sphere_task(((1, 0, 0), (0, 1, 0))), seed=11)
    assert membership_test(problem, 1, point) is on_equator
    assert membership_test(problem, 2, point) is False
    assert membership_test(problem, 3, point) is False


def test_empty_real_trace():
    task = PolarTask(("X1^2+X2^2+1",), ("X1", "X2"), a=((1, 2),))
    polar = polar_sample_points(task, seed=3)
    assert polar.result.degree == 2
    assert polar.points == []


@pytest.mark.parametrize(
    "maps,variables,size",
    [
        (["X1", "X2+X1^2", "X3+X2^2"], ["X1", "X2", "X3"], 1),
        (["X1^2", "X2"], ["X1", "X2"], 2),
        (["X1", "X1"], ["X1", "X2"], 0),
    ],
)
def test_generic_fibers(maps, variables, size):
    fiber = generic_fiber(maps, variables, seed=5)
    assert fiber.fiber_size == size
    assert fiber.dominant is (size > 0)


def test_non_dominant_map_is_empty():
    fiber = generic_fiber(["X1", "X1"], ["X1", "X2"], seed=5)
    assert fiber.result.to_text() == "EMPTY"
    assert fiber.to_dict()["resolution"] is None


@pytest.mark.parametrize(
    "start,target,count",
    [
        (["X1"], ["X1-1"], 1),
        (["X1^2"], ["1"], 2),
    ],
)
def test_homotopy_counts(start, target, count):
    result = homotopy_count(start, target, ["X1"], seed=3)
    assert result.count == count


def random_plane_polynomial(rng):
    """Constant term plus one to four monomials of degree 1 to 3."""
    monomials = [(i, j) for i in range(4) for j in range(4 - i) if i + j]
    terms = []
    for i, j in rng.sample(monomials, rng.randint(1, 4)):
        powers = [f"X{v}^{e}" for v, e in ((1, i), (2, j)) if e]
        terms.append("*".join([str(rng.randint(-3, 3) or 1), *powers]))
    return " + ".join([str(rng.randint(-3, 3)), *terms])


def to_sympy(value):
    q = rational(value)
    return Rational(int(q.numerator), int(q.denominator))


def count_by_resultant(start, target, weights, rhs, rng):
    """Distinct solutions of lambda F + mu G = c, from a resultant after a shear X1 = Z - k X2."""
    x1, x2, z = symbols("X1 X2 Z")
    lam, mu = (to_sympy(c) for c in weights)
    k = Rational(rng.randint(2, 97), rng.randint(2, 97))
    system = []
    for f, g, c in zip(start, target, rhs):
        f_expr, g_expr = (sympify(t.replace("^", "**"), locals={"X1": x1, "X2": x2}) for t in (f, g))
        system.append(expand((lam * f_expr + mu * g_expr - to_sympy(c)).subs(x1, z - k * x2)))
    eliminated = resultant(*system, x2)
    assert eliminated != 0
    return degree(sqf_part(eliminated), z)


@pytest.mark.parametrize("seed", range(5))
def test_homotopy_count_matches_resultant(seed):
    rng = random.Random(seed)
    start = [random_plane_polynomial(rng) for _ in range(2)]
    target = [random_plane_polynomial(rng) for _ in range(2)]
    result = homotopy_count(start, target, ["X1", "X2"], seed=seed)
    assert result.count == count_by_resultant(start, target, result.weights, result.rhs, rng)


def test_composition_preimage_of_polar_points():
    problem = composition_problem(
        ["Z1^2+Z2^2-1"], ["X1+X2", "X2"], ["X1", "X2"], seed=4, a=((1, 2),)
    )
    result = solve(problem)
    assert result.degree == 2
    # Z = Q(X) satisfies Z2 = 2 Z1 and Z1^2 + Z2^2 = 1: both real
    assert len(real_points(result.resolution)) == 2
