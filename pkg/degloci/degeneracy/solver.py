"""End-to-end solve of a degeneracy problem.

One attempt runs the whole Kronecker chain modulo a random prime: the square
subsystem gives V, a hitting sequence gives the charts, every chart runs its
chain, and the chart fibres are merged under a common primitive element. The
merged answer is then brought to QQ by p-adic lifting (or by Chinese
remaindering over fresh primes), cross-checked modulo a second prime and
post-verified. Unlucky random choices surface as RandomnessFailure and the
attempt is redrawn.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Union

import backoff
from sympy import isprime

from degloci.circuit import RingPoint, evaluate
from degloci.config import SolverSettings, get_settings
from degloci.degeneracy.chain import ChartReport, solve_chain_on_chart
from degloci.degeneracy.hitting import choose_hitting_sequence
from degloci.degeneracy.membership import membership_test
from degloci.degeneracy.minors import minor_circuit
from degloci.degeneracy.problem import DegeneracyProblem
from degloci.errors import (
    DivisorNotInvertible,
    EmptyVariety,
    InconsistentResidues,
    InsufficientPrecision,
    InvariantViolation,
    NotPrimitive,
    ProblemError,
    PromiseViolationDetected,
    RandomnessFailure,
    RetriesExhausted,
)
from degloci.kronecker import (
    EMPTY,
    GeometricResolution,
    LiftingFiber,
    change_coordinates,
    change_primitive_element,
    check_fiber,
    identity_matrix,
    lift_fiber,
    lifting_precision,
    merge_resolutions,
    solve_square_subsystem,
)
from degloci.kronecker.fiber import _Empty
from degloci.logging import get_logger, solver_context
from degloci.upoly.fields import PrimeField, rational
from degloci.upoly.modular import crt_and_rational_reconstruction, random_prime

logger = get_logger(__name__)

ResolutionOrEmpty = Union[GeometricResolution, _Empty]


@dataclass
class SolveReport:
    """What one solve did: degrees along the way, primes, retries, checks."""

    seed: int
    strategy: str = ""
    charts: list[ChartReport] = field(default_factory=list)
    square_degrees: list[int] = field(default_factory=list)
    primes: list[int] = field(default_factory=list)
    rejected_primes: list[int] = field(default_factory=list)
    attempts: int = 0
    lifting_precision: int = 0
    reconstruction: str = "padic"
    verified: bool = False
    degree: int = 0

    @property
    def retries(self) -> int:
        return max(self.attempts - 1, 0)

    @property
    def variety_degree(self) -> int:
        """delta_G, the largest degree met while solving the square subsystem."""
        return max(self.square_degrees, default=1)

    @property
    def system_degree(self) -> int:
        """delta, the largest degree of an intermediate fibre."""
        chain = [step.degree for chart in self.charts for step in chart.steps]
        return max([self.variety_degree] + chain)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "strategy": self.strategy,
            "charts": [chart.to_dict() for chart in self.charts],
            "square_degrees": list(self.square_degrees),
            "variety_degree": self.variety_degree,
            "system_degree": self.system_degree,
            "primes": list(self.primes),
            "rejected_primes": list(self.rejected_primes),
            "attempts": self.attempts,
            "retries": self.retries,
            "reconstruction": self.reconstruction,
            "lifting_precision": self.lifting_precision,
            "verified": self.verified,
            "degree": self.degree,
        }


@dataclass
class SolveResult:
    problem: DegeneracyProblem
    resolution: ResolutionOrEmpty
    report: SolveReport

    @property
    def is_empty(self) -> bool:
        return self.resolution is EMPTY

    @property
    def degree(self) -> int:
        return 0 if self.is_empty else self.resolution.degree

    def to_dict(self) -> dict:
        return {
            "variables": list(self.problem.variables),
            "empty": self.is_empty,
            "resolution": None if self.is_empty else self.resolution.to_dict(),
            "report": self.report.to_dict(),
        }

    def to_text(self) -> str:
        if self.is_empty:
            return "EMPTY"
        return self.resolution.to_text(self.problem.variables)


@dataclass
class _ModularRun:
    prime: int
    resolution: ResolutionOrEmpty
    parts: list[LiftingFiber]
    primitive: Optional[tuple]


def _checked(fiber: LiftingFiber, cfg: SolverSettings) -> LiftingFiber:
    if cfg.verification.check_fibers:
        try:
            check_fiber(fiber)
        except InvariantViolation as exc:
            raise RandomnessFailure(f"fibre rejected: {exc}") from exc
    return fiber


def _with_primitive(
    parts: Sequence[LiftingFiber], primitive: Sequence
) -> tuple[list[LiftingFiber], ResolutionOrEmpty]:
    moved = [change_primitive_element(part, primitive) for part in parts]
    return moved, merge_resolutions(moved)


def _modular_run(
    problem: DegeneracyProblem,
    prime: int,
    rng: random.Random,
    cfg: SolverSettings,
    report: Optional[SolveReport] = None,
    primitive: Optional[Sequence] = None,
) -> _ModularRun:
    """The merged modular resolution of W(a_r) and its chart fibres in X coordinates."""
    report = report or SolveReport(seed=problem.seed)
    domain = PrimeField(prime)
    degrees: list[int] = []
    try:
        fiber_v = solve_square_subsystem(
            problem.circuit,
            rng=rng,
            domain=domain,
            coordinate_range=cfg.randomness.coordinate_range,
            degrees=degrees,
        )
    except EmptyVariety as exc:
        logger.info("variety is empty", prime=prime, reason=str(exc))
        report.square_degrees = degrees
        return _ModularRun(prime, EMPTY, [], None)
    report.square_degrees = degrees
    fiber_v = _checked(fiber_v, cfg)
    hitting = choose_hitting_sequence(problem, fiber_v, rng, cfg)
    report.strategy = hitting.strategy
    extended, charts = minor_circuit(problem, hitting)
    fiber_v = replace(fiber_v, circuit=extended)

    parts = []
    report.charts = []
    for minors in charts:
        chart_report = ChartReport(minors.chart.index, minors.chart.columns)
        report.charts.append(chart_report)
        with solver_context(chart=minors.chart.index):
            part = solve_chain_on_chart(
                problem, minors, fiber_v, check=cfg.verification.check_fibers, report=chart_report
            )
        if part is not EMPTY:
            parts.append(change_coordinates(part, identity_matrix(problem.n)))
    if not parts:
        return _ModularRun(prime, EMPTY, [], None)

    if primitive is not None:
        parts, merged = _with_primitive(parts, primitive)
        return _ModularRun(prime, merged, parts, tuple(primitive))
    bound = cfg.randomness.primitive_range
    for _ in range(cfg.randomness.primitive_candidates):
        candidate = tuple(rng.randint(-bound, bound) for _ in range(problem.n))
        if not any(candidate):
            continue
        try:
            moved, merged = _with_primitive(parts, candidate)
        except NotPrimitive:
            logger.debug("primitive element rejected", primitive=list(candidate))
            continue
        return _ModularRun(prime, merged, moved, candidate)
    raise NotPrimitive(f"no common primitive element in {cfg.randomness.primitive_candidates} draws")


def _padic(run: _ModularRun, cfg: SolverSettings, report: SolveReport) -> ResolutionOrEmpty:
    lifted = []
    for part in run.parts:
        exact = lift_fiber(part, cfg.arithmetic.max_lifting_steps)
        report.lifting_precision = max(report.lifting_precision, lifting_precision(exact))
        lifted.append(exact)
    return merge_resolutions(lifted)


def _reconstruct(images: Sequence[GeometricResolution], primitive: Sequence) -> GeometricResolution:
    polynomial = crt_and_rational_reconstruction([image.polynomial for image in images])
    params = tuple(
        crt_and_rational_reconstruction([image.params[k] for image in images])
        for k in range(images[0].n)
    )
    return GeometricResolution(polynomial, params, tuple(rational(c) for c in primitive))


def _multiprime(
    problem: DegeneracyProblem,
    run: _ModularRun,
    rng: random.Random,
    cfg: SolverSettings,
    report: SolveReport,
) -> GeometricResolution:
    images = [run.resolution]
    previous: Optional[GeometricResolution] = None
    while len(images) < cfg.arithmetic.max_primes:
        prime = random_prime(rng, cfg.arithmetic.prime_bits, avoid=report.primes)
        report.primes.append(prime)
        with solver_context(prime=prime):
            image = _modular_run(problem, prime, rng, cfg, primitive=run.primitive).resolution
        if image is EMPTY or image.degree != run.resolution.degree:
            raise InconsistentResidues(f"degree changes modulo {prime}")
        images.append(image)
        try:
            candidate = _reconstruct(images, run.primitive)
        except InsufficientPrecision:
            continue
        if candidate == previous:
            bits = sum(image.domain.modulus.bit_length() for image in images)
            report.lifting_precision = bits
            logger.debug("multiprime reconstruction stable", primes=len(images), bits=bits)
            return candidate
        previous = candidate
    raise InsufficientPrecision(f"no stable reconstruction from {cfg.arithmetic.max_primes} primes")


def _cross_check(
    problem: DegeneracyProblem,
    resolution: ResolutionOrEmpty,
    primitive: Optional[tuple],
    rng: random.Random,
    cfg: SolverSettings,
    report: SolveReport,
) -> None:
    prime = random_prime(rng, cfg.arithmetic.prime_bits, avoid=report.primes)
    report.primes.append(prime)
    with solver_context(prime=prime):
        check = _modular_run(problem, prime, rng, cfg, primitive=primitive).resolution
    if resolution is EMPTY or check is EMPTY:
        if resolution is not check:
            raise InconsistentResidues(f"emptiness differs modulo {prime}")
        return
    if resolution.reduce(prime) != check:
        raise InconsistentResidues(f"resolution differs modulo the check prime {prime}")
    logger.debug("cross check passed", prime=prime, degree=resolution.degree)


def post_verify(problem: DegeneracyProblem, resolution: ResolutionOrEmpty, report: SolveReport) -> None:
    """Check the final answer; PromiseViolationDetected when a check fails."""
    for chart in report.charts:
        for step in chart.steps:
            if step.bound is not None and step.raw > step.bound:
                raise PromiseViolationDetected(
                    f"chart {chart.index} step {step.label}: degree {step.raw} above the bound {step.bound}"
                )
    if resolution is EMPTY:
        return
    if resolution.degree > problem.bezout_bound:
        raise PromiseViolationDetected(
            f"degree {resolution.degree} above the Bezout bound {problem.bezout_bound}"
        )
    total = sum(chart.degree for chart in report.charts)
    if resolution.degree > total:
        raise PromiseViolationDetected(f"degree {resolution.degree} above the chart total {total}")
    ring = resolution.quotient()
    point = RingPoint.of(ring, [ring.from_poly(v) for v in resolution.params])
    circuit = problem.circuit
    if any(not ring.is_zero(v) for v in evaluate(circuit, point, circuit.equations)):
        raise PromiseViolationDetected("the points do not satisfy G")
    if circuit.inequation:
        (h,) = evaluate(circuit, point, [circuit.inequation])
        try:
            ring.inverse(h)
        except DivisorNotInvertible:
            raise PromiseViolationDetected("H vanishes at some point") from None
    if problem.r >= 1 and not membership_test(problem, problem.r, resolution):
        raise PromiseViolationDetected(f"the points are not in W(a_{problem.r})")


def _first_prime(prime: Optional[int], cfg: SolverSettings, report: SolveReport, rng: random.Random) -> int:
    if prime is not None:
        if not isprime(prime):
            raise ProblemError(f"{prime} is not a prime")
        if prime >= cfg.arithmetic.min_prime:
            return prime
        report.rejected_primes.append(prime)
        logger.warning("bad prime rejected", prime=prime, min_prime=cfg.arithmetic.min_prime)
    return random_prime(rng, cfg.arithmetic.prime_bits, avoid=report.rejected_primes)


def _attempt(
    problem: DegeneracyProblem,
    prime: Optional[int],
    cfg: SolverSettings,
    report: SolveReport,
) -> SolveResult:
    k = report.attempts
    report.attempts += 1
    rng = random.Random(f"{problem.seed}:{k}")
    prime = _first_prime(prime if k == 0 else None, cfg, report, rng)
    report.primes = [prime]
    report.lifting_precision = 0
    with solver_context(seed=problem.seed, attempt=k, prime=prime):
        try:
            run = _modular_run(problem, prime, rng, cfg, report)
        except DivisorNotInvertible:
            report.rejected_primes.append(prime)
            logger.warning("bad prime rejected")
            raise
        if run.resolution is EMPTY:
            resolution: ResolutionOrEmpty = EMPTY
        elif cfg.arithmetic.reconstruction == "padic":
            resolution = _padic(run, cfg, report)
        else:
            resolution = _multiprime(problem, run, rng, cfg, report)
        if cfg.arithmetic.cross_check:
            _cross_check(problem, resolution, run.primitive, rng, cfg, report)
    report.degree = 0 if resolution is EMPTY else resolution.degree
    if cfg.verification.post_verify:
        post_verify(problem, resolution, report)
        report.verified = True
    return SolveResult(problem, resolution, report)


def _log_retry(details: dict) -> None:
    exc = details.get("exception")
    logger.info(
        "attempt failed, retrying",
        attempt=details["tries"],
        error=type(exc).__name__ if exc else None,
        reason=str(exc) if exc else None,
    )


def solve(
    problem: DegeneracyProblem,
    prime: Optional[int] = None,
    settings: Optional[SolverSettings] = None,
) -> SolveResult:
    """Geometric resolution of W(a_r), or EMPTY.

    ``prime`` fixes the working prime of the first attempt; later attempts
    draw fresh primes. Raises RetriesExhausted when every attempt met an
    unlucky random choice and PromiseViolationDetected when the answer
    fails its post-checks.
    """
    cfg = settings or get_settings()
    report = SolveReport(seed=problem.seed, reconstruction=cfg.arithmetic.reconstruction)

    @backoff.on_exception(
        backoff.constant,
        (RandomnessFailure, InsufficientPrecision),
        max_tries=cfg.randomness.max_retries,
        interval=0,
        jitter=None,
        on_backoff=_log_retry,
    )
    def attempt() -> SolveResult:
        return _attempt(problem, prime, cfg, report)

    try:
        result = attempt()
    except (RandomnessFailure, InsufficientPrecision) as exc:
        logger.error("retries exhausted", attempts=report.attempts, error=str(exc))
        raise RetriesExhausted(
            f"gave up after {report.attempts} attempts: {exc}", attempts=report.attempts
        ) from exc
    logger.info(
        "solve finished",
        empty=result.is_empty,
        degree=result.degree,
        attempts=report.attempts,
        primes=len(report.primes),
        verified=report.verified,
    )
    return result


def solve_modular(
    problem: DegeneracyProblem,
    prime: int,
    primitive: Optional[Sequence] = None,
    settings: Optional[SolverSettings] = None,
) -> ResolutionOrEmpty:
    """The canonical resolution of W(a_r) over GF(prime) for the primitive form ``primitive``.

    With the primitive form of an exact answer this equals its reduction
    modulo ``prime``. A single attempt; RandomnessFailure propagates.
    """
    cfg = settings or get_settings()
    rng = random.Random(f"{problem.seed}:modular:{prime}")
    return _modular_run(problem, prime, rng, cfg, primitive=primitive).resolution
