import pytest

from degloci.applications.realroots import (
    approximate,
    isolate_real_roots,
    real_points,
    refine_root,
    sturm_count,
)
from degloci.kronecker import GeometricResolution
from degloci.upoly import QQ_FIELD, PrimeField, UPoly, rational


def qq(*coeffs):
    return UPoly.from_coeffs(QQ_FIELD, coeffs)


GOLDEN_QUARTIC = qq(198, 72, 31, 4, 1)


@pytest.mark.parametrize(
    "poly,count",
    [
        (qq(-2, 0, 1), 2),
        (qq(5, 0, 1), 0),
        (GOLDEN_QUARTIC, 0),
        (qq(2, -3, 1), 2),
        (qq(0, -1, 0, 1), 3),
        (qq(7), 0),
    ],
)
def test_root_counts(poly, count):
    assert sturm_count(poly) == count
    assert len(isolate_real_roots(poly)) == count


def test_intervals_are_disjoint_and_ordered():
    intervals = isolate_real_roots(qq(0, -1, 0, 1))  # -1, 0, 1
    for (_, high), (low, _) in zip(intervals, intervals[1:]):
        assert high <= low
    assert intervals[0][1] < 0 < intervals[2][0]


def test_repeated_roots_counted_once():
    square = qq(-2, 0, 1) * qq(-2, 0, 1)
    assert len(isolate_real_roots(square)) == 2


def test_sturm_count_on_interval():
    poly = qq(-2, 0, 1)
    assert sturm_count(poly, 0, 2) == 1
    assert sturm_count(poly, -2, 2) == 2
    assert sturm_count(poly, 2, 3) == 0


def test_refine_below_width():
    poly = qq(-2, 0, 1)
    low, high = refine_root(poly, isolate_real_roots(poly)[1], "1/1000000")
    assert high - low < rational("1/1000000")
    assert low * low <= 2 <= high * high


def test_modular_polynomial_rejected():
    with pytest.raises(ValueError):
        isolate_real_roots(UPoly.from_coeffs(PrimeField(101), [-2, 0, 1]))


def test_real_points_of_resolution():
    # t^2 = 2, X1 = t, X2 = 1/2
    resolution = GeometricResolution(qq(-2, 0, 1), (qq(0, 1), qq("1/2")), (rational(1), rational(0)))
    points = real_points(resolution, precision=6)
    assert [p.coordinates for p in points] == [("-1.41421", "0.500000"), ("1.41421", "0.500000")]
    assert points[0].to_dict()["coordinates"] == ["-1.41421", "0.500000"]


def test_no_real_points():
    resolution = GeometricResolution(qq(5, 0, 1), (qq(0, 1),), (rational(1),))
    assert real_points(resolution) == []


def test_approximate():
    assert approximate("1/3", 5) == "0.33333"
