import random
from dataclasses import replace

import pytest

from degloci.circuit import compile_polynomials, evaluate
from degloci.errors import EmptyVariety, InvariantViolation, NotPrimitive
from degloci.kronecker import (
    EMPTY,
    CleanMode,
    GeometricResolution,
    change_coordinates,
    change_lifting_point,
    change_primitive_element,
    check_fiber,
    clean_nonzeros,
    identity_matrix,
    intersect_with_hypersurface,
    lift_fiber,
    merge_resolutions,
    solve_square_subsystem,
    to_resolution,
)
from degloci.upoly import QQ_FIELD, PrimeField, UPoly, rational

P = 1000003
VARS = ("X1", "X2")


def qq(*coeffs):
    return UPoly.from_coeffs(QQ_FIELD, coeffs)


def circle_and_line():
    return compile_polynomials(
        VARS,
        {"G1": "X1^2+X2^2-5", "G2": "X1-2*X2", "h": "X1-2", "k": "X1^2-4*X2^2"},
        equations=["G1", "G2"],
    )


def square(circuit, seed=5, **kwargs):
    return solve_square_subsystem(circuit, rng=random.Random(seed), domain=PrimeField(P), **kwargs)


def test_square_subsystem_degrees():
    degrees = []
    fiber = square(circle_and_line(), degrees=degrees)
    assert fiber.dimension == 0
    assert fiber.degree == 2
    assert degrees == [2, 2]
    check_fiber(fiber)


def test_points_satisfy_the_system():
    fiber = square(circle_and_line())
    assert all(r.is_zero() for r in fiber.evaluate_outputs(["G1", "G2"]))


def test_inequation_removes_points():
    fiber = square(circle_and_line(), inequation="h")
    assert fiber.degree == 1
    (value,) = fiber.evaluate_outputs(["h"])
    assert not value.is_zero()


def test_empty_variety():
    circuit = compile_polynomials(VARS, {"G1": "X1*X2-1", "G2": "X1"}, equations=["G1", "G2"])
    with pytest.raises(EmptyVariety):
        square(circuit)


def test_intersect_curve_with_line():
    circuit = circle_and_line()
    curve = square(circuit, equations=["G1"])
    assert curve.dimension == 1
    points = intersect_with_hypersurface(curve, "G2")
    assert points.dimension == 0
    assert points.degree == 2


def test_intersect_avoiding_zeros():
    circuit = circle_and_line()
    curve = square(circuit, equations=["G1"])
    points = intersect_with_hypersurface(curve, "G2", avoid=["h"])
    assert points.degree == 1


def test_clean_modes():
    fiber = square(circle_and_line())
    removed = clean_nonzeros(fiber, ["h"])
    kept = clean_nonzeros(fiber, ["h"], CleanMode.KEEP_ZEROS)
    assert removed.degree == 1
    assert kept.degree == 1
    assert removed.minimal_poly * kept.minimal_poly == fiber.minimal_poly


def test_clean_is_idempotent():
    fiber = square(circle_and_line())
    once = clean_nonzeros(fiber, ["h"])
    assert clean_nonzeros(once, ["h"]) is once


def test_clean_vanishing_everywhere():
    fiber = square(circle_and_line())
    assert clean_nonzeros(fiber, ["k"]) is EMPTY
    assert clean_nonzeros(fiber, ["k"], CleanMode.KEEP_ZEROS) is fiber
    assert clean_nonzeros(EMPTY, ["h"]) is EMPTY


def test_check_fiber_rejects_square_factor():
    fiber = square(circle_and_line())
    broken = replace(fiber, minimal_poly=fiber.minimal_poly * fiber.minimal_poly)
    with pytest.raises(InvariantViolation):
        check_fiber(broken)


def test_check_fiber_rejects_short_system():
    fiber = square(circle_and_line())
    with pytest.raises(InvariantViolation):
        check_fiber(fiber.with_system(["G1"]))


def test_change_primitive_element():
    fiber = change_coordinates(square(circle_and_line()), identity_matrix(2))
    moved = change_primitive_element(fiber, [3, 1])
    check_fiber(moved)
    assert moved.degree == 2
    # u = 3 X1 + X2 takes the values 7 and -7
    assert moved.minimal_poly == UPoly.from_coeffs(PrimeField(P), [-49, 0, 1])


def test_change_primitive_element_not_separating():
    fiber = change_coordinates(square(circle_and_line()), identity_matrix(2))
    with pytest.raises(NotPrimitive):
        change_primitive_element(fiber, [1, -2])


def test_to_resolution_in_x_coordinates():
    fiber = change_primitive_element(
        change_coordinates(square(circle_and_line()), identity_matrix(2)), [3, 1]
    )
    resolution = to_resolution(fiber)
    ring = resolution.quotient()
    assert all(ring.is_zero(v) for v in evaluate(circle_and_line(), resolution.point(ring), ["G1", "G2"]))
    assert resolution.primitive == (3, 1)


def test_lift_fiber_to_rationals():
    fiber = change_primitive_element(
        change_coordinates(square(circle_and_line()), identity_matrix(2)), [3, 1]
    )
    exact = lift_fiber(fiber)
    assert exact.domain == QQ_FIELD
    resolution = to_resolution(exact)
    assert resolution.polynomial == qq(-49, 0, 1)
    # X1 = 2T/7, X2 = T/7
    assert resolution.params == (qq(0, "2/7"), qq(0, "1/7"))
    assert resolution.reduce(P) == to_resolution(fiber)


def test_merge_resolutions():
    one = rational(1)
    first = GeometricResolution(qq(-1, 1), (qq(1),), (one,))
    second = GeometricResolution(qq(-2, 1), (qq(2),), (one,))
    merged = merge_resolutions([first, EMPTY, second])
    assert merged.polynomial == qq(2, -3, 1)
    assert merged.params == (qq(0, 1),)


def test_merge_drops_repeated_points():
    one = rational(1)
    first = GeometricResolution(qq(-1, 1), (qq(1),), (one,))
    assert merge_resolutions([first, first]).degree == 1


def test_merge_conflicting_points():
    one = rational(1)
    first = GeometricResolution(qq(-1, 1), (qq(1),), (one,))
    clash = GeometricResolution(qq(-1, 1), (qq(5),), (one,))
    with pytest.raises(NotPrimitive):
        merge_resolutions([first, clash])


def test_merge_nothing():
    assert merge_resolutions([EMPTY, EMPTY]) is EMPTY


@pytest.mark.parametrize("step", [3, 17, P - 1])
def test_change_lifting_point_round_trip(step):
    circuit = compile_polynomials(VARS, {"G1": "X1^2+X2^2-5"}, equations=["G1"])
    curve = square(circuit)
    assert curve.dimension == 1
    start = curve.lifting_point
    moved = change_lifting_point(curve, [(start[0] + step) % P])
    assert moved.lifting_point == ((start[0] + step) % P,)
    assert moved.degree == curve.degree == 2
    check_fiber(moved)
    assert all(r.is_zero() for r in moved.evaluate_outputs(["G1"]))
    back = change_lifting_point(moved, list(start))
    assert back.minimal_poly == curve.minimal_poly
    assert back.params == curve.params


def test_change_lifting_point_to_same_point():
    curve = square(compile_polynomials(VARS, {"G1": "X1^2+X2^2-5"}, equations=["G1"]))
    assert change_lifting_point(curve, list(curve.lifting_point)) is curve
