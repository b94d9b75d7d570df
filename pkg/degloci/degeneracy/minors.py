"""Circuits of the chart minors, compiled once per (problem, hitting sequence)."""

from __future__ import annotations

from dataclasses import dataclass

from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from degloci.circuit import Circuit, CircuitBuilder
from degloci.circuit.transforms import entry_node
from degloci.degeneracy.hitting import Chart, HittingSequence
from degloci.degeneracy.problem import DegeneracyProblem, MinorSpec, build_T, full_minor
from degloci.logging import get_logger
from degloci.upoly import linalg

logger = get_logger(__name__)


@dataclass(frozen=True)
class ChartMinors:
    """Output names of one chart: F b_t entries and the minors of the chain."""

    chart: Chart
    f_names: tuple[tuple[str, ...], ...]
    a_matrix: tuple[tuple, ...]
    delta: str
    full: str
    leading: dict  # level i -> name of m_i
    lower: dict  # level i -> names of N_(s-i..s)


def _output_minor(builder: CircuitBuilder, prefix: str, spec: MinorSpec, f_names, a_matrix) -> str:
    entries = spec.view.entries(f_names, a_matrix)
    nodes = [[entry_node(builder, e) for e in row] for row in entries]
    return builder.output(prefix + spec.name, linalg.det(builder, nodes))


def _chart_outputs(builder: CircuitBuilder, problem: DegeneracyProblem, chart: Chart) -> ChartMinors:
    prefix = f"c{chart.index}:"
    s, r = problem.s, problem.r
    b = chart.matrix
    f_names = []
    for k, row in enumerate(problem.circuit.matrix):
        nodes = [builder.node_of(name) for name in row]
        names = []
        for col in range(s):
            node = builder.linear_combination([b[c][col] for c in range(s)], nodes)
            names.append(builder.output(f"{prefix}F{k + 1}_{col + 1}", node))
        f_names.append(tuple(names))
    a_matrix = tuple(map(tuple, linalg.rational_matmul(problem.a, b))) if problem.a else ()
    first = build_T(problem, 1)
    delta = _output_minor(builder, prefix, first.delta, f_names, a_matrix)
    full = _output_minor(builder, prefix, full_minor(problem), f_names, a_matrix) if r else ""
    leading, lower = {}, {}
    for i in range(1, r + 1):
        view = build_T(problem, i)
        leading[i] = _output_minor(builder, prefix, view.leading, f_names, a_matrix)
        if i < r:
            lower[i] = tuple(
                _output_minor(builder, prefix, spec, f_names, a_matrix) for spec in view.lower
            )
    return ChartMinors(
        chart=chart,
        f_names=tuple(f_names),
        a_matrix=a_matrix,
        delta=delta,
        full=full,
        leading=leading,
        lower=lower,
    )


@cached(
    cache=LRUCache(maxsize=32),
    key=lambda problem, hitting: hashkey(problem.circuit, problem.a, hitting.charts),
)
def minor_circuit(
    problem: DegeneracyProblem, hitting: HittingSequence
) -> tuple[Circuit, tuple[ChartMinors, ...]]:
    """The problem circuit extended by the minors every chart of ``hitting`` needs."""
    base = problem.circuit
    builder = CircuitBuilder.extending(base)
    charts = tuple(_chart_outputs(builder, problem, chart) for chart in hitting.charts)
    circuit = builder.build(
        equations=base.equations,
        inequation=base.inequation,
        matrix=base.matrix,
    )
    logger.debug("minor circuits compiled", charts=len(charts), size=circuit.size, base_size=base.size)
    return circuit, charts
