"""Shifted-sphere benchmark: real sample points of a product of spheres.

Run with ``pytest -m slow``; times are reported through the solver log.
"""

import time

import pytest

from degloci.applications import polar_sample_points, shifted_spheres_task
from degloci.logging import get_logger

logger = get_logger(__name__)


@pytest.mark.slow
@pytest.mark.parametrize("count", [1, 2])
def test_every_sphere_gets_a_point(count):
    started = time.perf_counter()
    polar = polar_sample_points(shifted_spheres_task(count), seed=2024)
    elapsed = time.perf_counter() - started
    logger.info(
        "shifted spheres",
        count=count,
        degree=polar.result.degree,
        real_points=len(polar.points),
        seconds=round(elapsed, 3),
    )
    assert polar.result.report.verified
    assert len(polar.points) >= count


@pytest.mark.slow
def test_without_substitution():
    polar = polar_sample_points(shifted_spheres_task(1, substitute=False), seed=2024)
    assert len(polar.points) >= 1
