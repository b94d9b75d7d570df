"""End-to-end runs of the degeneracy solver on small exact examples."""

from pathlib import Path

import pytest
from sympy import nextprime

from degloci.cli import build_problem
from degloci.cli.problem_file import parse_problem_file
from degloci.config import get_settings
from degloci.degeneracy import membership_test, solve, solve_modular
from degloci.errors import NotOnVariety, ProblemError
from degloci.upoly import QuotientRing, UPoly, QQ_FIELD

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
BIG_PRIME = 2147483647


def qq(*coeffs):
    return UPoly.from_coeffs(QQ_FIELD, coeffs)


def golden_problem():
    problem = parse_problem_file((FIXTURES / "golden.problem").read_text())
    return build_problem(problem, tuple(problem.a), problem.seed)


@pytest.fixture(scope="module")
def golden():
    problem = golden_problem()
    return problem, solve(problem)


def test_golden_point_set(golden):
    _, result = golden
    resolution = result.resolution
    assert resolution.degree == 4
    ring = resolution.quotient()
    x1, x2, x3 = (ring.from_poly(v) for v in resolution.params)
    y1 = ring.sub(x1, x2)
    # Y1 = X1 - X2 is a root of T^4+4T^3+31T^2+72T+198, X2 = v2(Y1), X3 = 3
    quartic = qq(198, 72, 31, 4, 1)
    v2 = qq(1, "1/2", "1/9", "1/18")
    assert ring.is_zero(ring.evaluate_poly(quartic, y1))
    assert ring.equal(x2, ring.evaluate_poly(v2, y1))
    assert ring.equal(x3, ring.from_rational(3))


def test_golden_report(golden):
    _, result = golden
    report = result.report
    assert report.strategy == "all-subsets"
    assert report.verified
    first = report.charts[0]
    assert first.columns == (0,)
    assert [step.label for step in first.steps] == ["V", "i=1", "i=2"]
    assert first.steps[1].degree == 4
    last = first.steps[-1]
    # five points on the curve where m_1 vanishes, the one with H = 0 is dropped
    assert (last.raw, last.degree) == (5, 4)
    assert first.degree == 4
    assert all(step.raw <= step.bound for step in first.steps if step.bound is not None)


def test_golden_membership(golden):
    problem, result = golden
    assert membership_test(problem, 2, result.resolution)
    assert membership_test(problem, 1, result.resolution)


def test_point_off_the_variety(golden):
    problem, _ = golden
    with pytest.raises(NotOnVariety):
        membership_test(problem, 2, (1, 1, 1))


def test_modular_run_matches_reduction(golden):
    problem, result = golden
    exact = result.resolution
    modular = solve_modular(problem, BIG_PRIME, primitive=exact.primitive)
    assert modular == exact.reduce(BIG_PRIME)


def test_same_seed_same_answer(golden):
    problem, result = golden
    again = solve(problem)
    assert again.resolution == result.resolution


def test_multiprime_reconstruction(golden):
    problem, result = golden
    cfg = get_settings().model_copy(deep=True)
    cfg.arithmetic.reconstruction = "multiprime"
    other = solve(problem, settings=cfg)
    assert other.degree == 4
    assert other.report.reconstruction == "multiprime"
    # both describe the same four points
    ring = QuotientRing(other.resolution.polynomial)
    point = [ring.from_poly(v) for v in other.resolution.params]
    u = sum_form(ring, result.resolution.primitive, point)
    assert ring.is_zero(ring.evaluate_poly(result.resolution.polynomial, u))


def sum_form(ring, coefficients, point):
    total = ring.zero()
    for c, x in zip(coefficients, point):
        total = ring.add(total, ring.mul(ring.from_rational(c), x))
    return total


def test_dropped_point_is_not_in_the_answer(golden):
    _, result = golden
    resolution = result.resolution
    ring = resolution.quotient()
    x1, x2, x3 = (ring.from_poly(v) for v in resolution.params)
    # the dropped point has Y1 = X1 - X2 = 0 and lies on X1 X2 X3 = 0
    ring.inverse(ring.sub(x1, x2))
    ring.inverse(ring.mul(x1, ring.mul(x2, x3)))


def test_small_prime_is_rejected(golden):
    problem, result = golden
    again = solve(problem, prime=7)
    assert 7 in again.report.rejected_primes
    assert 7 not in again.report.primes
    assert again.resolution == result.resolution


@pytest.mark.parametrize("prime", [4, 1000000])
def test_composite_prime_is_refused(golden, prime):
    problem, _ = golden
    with pytest.raises(ProblemError):
        solve(problem, prime=prime)


def test_large_primes_agree(golden):
    problem, _ = golden
    first = solve(problem, prime=2**61 - 1)
    second = solve(problem, prime=int(nextprime(2**61)))
    assert first.report.primes[0] == 2**61 - 1
    assert first.resolution == second.resolution
    assert first.degree == 4
