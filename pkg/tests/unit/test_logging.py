import json
import logging

import structlog

from degloci.applications import homotopy_count
from degloci.applications.realroots import isolate_real_roots, real_points
from degloci.kronecker import GeometricResolution
from degloci.logging import get_logger, solver_context
from degloci.upoly import QQ_FIELD, UPoly, rational


def test_logger_json(caplog):
    logger = get_logger(__name__)
    with caplog.at_level(logging.INFO):
        logger.info("test", foo=1)
    line = caplog.text.strip().splitlines()[-1]
    json_part = line[line.find("{") :]
    data = json.loads(json_part)
    assert data["event"] == "test"
    assert data["foo"] == 1
    assert data["level"] == "info"
    assert data["logger"] == __name__


def test_engine_events_are_structured(caplog):
    poly = UPoly.from_coeffs(QQ_FIELD, [-2, 0, 1])
    resolution = GeometricResolution(poly, (UPoly.from_coeffs(QQ_FIELD, [0, 1]),), (rational(1),))
    with caplog.at_level(logging.DEBUG):
        isolate_real_roots(poly)
        real_points(resolution, precision=4)
    line = caplog.text.strip().splitlines()[-1]
    data = json.loads(line[line.find("{") :])
    assert data["event"] == "real points computed"
    assert data["real"] == 2


def events(caplog):
    lines = [line for line in caplog.text.splitlines() if "{" in line]
    return [json.loads(line[line.find("{") :]) for line in lines]


def test_rationals_are_rendered_exactly(caplog):
    logger = get_logger(__name__)
    with caplog.at_level(logging.INFO):
        logger.info("exact values", value=rational("2/7"), values=[rational(3), rational("-1/2")])
    data = events(caplog)[-1]
    assert data["value"] == "2/7"
    assert data["values"] == [3, "-1/2"]


def test_solver_context_is_scoped(caplog):
    logger = get_logger(__name__)
    with caplog.at_level(logging.INFO):
        with solver_context(seed=5, prime=101, chart=None):
            logger.info("inside")
        logger.info("outside")
    inside, outside = events(caplog)[-2:]
    assert (inside["seed"], inside["prime"]) == (5, 101)
    assert "chart" not in inside
    assert "seed" not in outside


def test_solver_events_carry_seed_prime_and_chart(caplog):
    with caplog.at_level(logging.INFO):
        result = homotopy_count(["X1"], ["X1-1"], ["X1"], seed=3)
    report = result.result.report
    last = report.attempts - 1
    steps = [e for e in events(caplog) if e["event"] == "chain step finished" and e.get("attempt") == last]
    assert steps
    primes = report.primes
    for step in steps:
        assert step["seed"] == 3
        assert step["prime"] in primes
        assert "chart" in step
    # the working prime first, the cross-check prime after it
    assert steps[0]["prime"] == primes[0]
    finished = [e for e in events(caplog) if e["event"] == "solve finished"][-1]
    assert "prime" not in finished
    assert structlog.contextvars.get_contextvars() == {}
