from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import typer

from degloci.applications import generic_fiber, homotopy_count, polar_sample_points
from degloci.applications.polar import PolarTask
from degloci.circuit import CircuitBuilder
from degloci.cli.problem_file import ProblemFile, parse_matrix, parse_problem_file, task_name
from degloci.config import SolverSettings, get_settings
from degloci.degeneracy import DegeneracyProblem, membership_test, solve
from degloci.errors import (
    DeglociError,
    NotOnVariety,
    ParseError,
    ProblemError,
    PromiseViolationDetected,
    RetriesExhausted,
)
from degloci.logging import get_logger
from degloci.upoly.fields import format_rational

__all__ = ["app", "main", "run"]

logger = get_logger(__name__)

app = typer.Typer(add_completion=False)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_PROMISE = 3
EXIT_RETRIES = 4


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _settings(verify: str, precision: Optional[int], fmt: str) -> SolverSettings:
    cfg = get_settings().model_copy(deep=True)
    cfg.verification.post_verify = verify == "on"
    if precision is not None:
        cfg.output.precision = precision
    cfg.output.format = fmt
    return cfg


def _matrix(spec: Optional[str], problem: ProblemFile) -> Optional[tuple]:
    if spec == "random":
        return None
    if spec is not None:
        return parse_matrix(_read_input(spec))
    return tuple(problem.a) if problem.a else None


def build_problem(problem: ProblemFile, a: Optional[tuple], seed: Optional[int]) -> DegeneracyProblem:
    """The degeneracy problem of the ``vars``, ``eq``, ``ineq`` and ``F`` statements."""
    builder = CircuitBuilder(len(problem.variables))
    equations = [
        builder.output(f"G{k + 1}", problem.parse_into(builder, e)) for k, e in enumerate(problem.equations)
    ]
    inequation = None
    if problem.inequation is not None:
        inequation = builder.output("H", problem.parse_into(builder, problem.inequation))
    matrix = [
        [builder.output(f"F{k + 1}_{l + 1}", problem.parse_into(builder, e)) for l, e in enumerate(row)]
        for k, row in enumerate(problem.matrix())
    ]
    circuit = builder.build(equations=equations, inequation=inequation, matrix=matrix)
    if a is not None:
        return DegeneracyProblem(circuit, a, seed=seed, variables=problem.variables)
    return DegeneracyProblem.with_random_matrix(circuit, seed=seed, variables=problem.variables)


def _validate(problem: ProblemFile, expressions) -> list[str]:
    """Parse every expression once so errors carry file positions."""
    builder = CircuitBuilder(len(problem.variables))
    for expression in expressions:
        problem.parse_into(builder, expression)
    return [e.text for e in expressions]


def _emit(data: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        typer.echo(json.dumps(data, indent=2, sort_keys=True))
    else:
        typer.echo(text)


def _report_text(report) -> list[str]:
    lines = [f"strategy {report.strategy}"]
    for chart in report.charts:
        steps = " ".join(f"{step.label}:{step.raw}->{step.degree}" for step in chart.steps)
        columns = ",".join(str(c + 1) for c in chart.columns)
        lines.append(f"chart {chart.index} columns {columns} degree {chart.degree} steps {steps}")
    lines.append(f"system degree {report.system_degree}")
    lines.append(f"attempts {report.attempts} retries {report.retries}")
    return lines


def _resolution_text(result) -> str:
    lines = [f"degree {result.degree}", result.to_text()]
    return "\n".join(lines + _report_text(result.report))


def _execute(problem: ProblemFile, task: str, a, seed, prime, cfg: SolverSettings) -> None:
    fmt = cfg.output.format
    if task == "solve":
        result = solve(build_problem(problem, a, seed), prime=prime, settings=cfg)
        _emit(result.to_dict(), _resolution_text(result), fmt)
    elif task == "polar":
        equations = _validate(problem, problem.equations)
        polar = polar_sample_points(
            PolarTask(tuple(equations), problem.variables, a=a), seed=seed, settings=cfg, prime=prime
        )
        lines = [_resolution_text(polar.result), f"real points {len(polar.points)}"]
        lines += ["(" + ", ".join(point.coordinates) + ")" for point in polar.points]
        _emit(polar.to_dict(), "\n".join(lines), fmt)
    elif task == "fiber":
        rows = problem.matrix()
        if len(rows) != 1:
            raise ProblemError("task fiber reads the maps from the single row F[1][1..n]")
        maps = _validate(problem, rows[0])
        fiber = generic_fiber(maps, problem.variables, seed=seed, settings=cfg, a=a, prime=prime)
        target = ", ".join(format_rational(c) for c in fiber.target)
        lines = [f"dominant {'yes' if fiber.dominant else 'no'}", f"target ({target})"]
        lines.append(_resolution_text(fiber.result))
        _emit(fiber.to_dict(), "\n".join(lines), fmt)
    elif task == "homotopy":
        rows = problem.matrix()
        if len(rows) != 1:
            raise ProblemError("task homotopy reads F from the single row F[1][1..n]")
        start = _validate(problem, rows[0])
        target = _validate(problem, problem.second_map())
        homotopy = homotopy_count(start, target, problem.variables, seed=seed, settings=cfg, a=a, prime=prime)
        lines = [f"count {homotopy.count}", _resolution_text(homotopy.result)]
        _emit(homotopy.to_dict(), "\n".join(lines), fmt)
    else:
        if problem.point is None:
            raise ProblemError("task member needs a point statement")
        degeneracy = build_problem(problem, a, seed)
        level = problem.level if problem.level is not None else degeneracy.r
        member = membership_test(degeneracy, level, problem.point)
        data = {"member": member, "level": level, "point": [format_rational(c) for c in problem.point]}
        _emit(data, "member" if member else "not member", fmt)


@app.command()
def degloci(
    input_path: str = typer.Option("-", "--input", "-i", help="Problem file, '-' for stdin"),
    task: Optional[str] = typer.Option(
        None, "--task", help="solve|degeneracy|polar|fiber|homotopy|member; member reads a rational point"
    ),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed of all random choices"),
    prime: str = typer.Option("auto", "--prime", help="Working prime P or 'auto'"),
    matrix_a: Optional[str] = typer.Option(None, "--matrix-a", help="File with the rows of a, or 'random'"),
    verify: str = typer.Option("on", "--verify", help="Post-verification on|off"),
    precision: Optional[int] = typer.Option(None, "--precision", help="Decimal digits of real points"),
    fmt: str = typer.Option("text", "--format", help="text|json"),
) -> None:
    """Solve the degeneracy problem described in a problem file."""
    try:
        if verify not in ("on", "off"):
            raise ParseError(f"--verify must be on or off, not {verify!r}")
        if fmt not in ("text", "json"):
            raise ParseError(f"--format must be text or json, not {fmt!r}")
        problem = parse_problem_file(_read_input(input_path))
        chosen = task_name(task) if task else problem.task
        if prime == "auto":
            working_prime = problem.prime
        else:
            try:
                working_prime = int(prime)
            except ValueError:
                raise ParseError(f"--prime must be an integer or 'auto', not {prime!r}") from None
        cfg = _settings(verify, precision, fmt)
        chosen_seed = seed if seed is not None else problem.seed
        _execute(problem, chosen, _matrix(matrix_a, problem), chosen_seed, working_prime, cfg)
    except (ParseError, ProblemError, NotOnVariety) as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(code=EXIT_PARSE)
    except PromiseViolationDetected as exc:
        typer.echo(f"promise violation: {exc}", err=True)
        raise typer.Exit(code=EXIT_PROMISE)
    except RetriesExhausted as exc:
        typer.echo(f"retries exhausted: {exc}", err=True)
        raise typer.Exit(code=EXIT_RETRIES)
    except DeglociError as exc:
        logger.error("solve failed", error=type(exc).__name__, reason=str(exc))
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(code=EXIT_ERROR)


def run(argv: Optional[list[str]] = None) -> int:
    """Run the command line and return its exit code instead of exiting."""
    code = app(prog_name="degloci", args=argv, standalone_mode=False)
    return code or EXIT_OK


def main(argv: list[str] | None = None) -> None:
    app(prog_name="degloci", args=argv)


if __name__ == "__main__":  # pragma: no cover - manual execution
    main()
