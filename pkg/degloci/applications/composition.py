"""Degeneracy problems of composition maps G = P o Q.

With G_k = P_k(Q_1, ..., Q_n) and F = J(P) o Q, the loci W(a_i) are the
Q-preimages of the polar varieties of {P = 0}. No new solver path is needed;
this module only builds the circuit.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Optional, Sequence

from degloci.circuit import (
    CircuitBuilder,
    RingPoint,
    compile_polynomials,
    derivative_name,
    differentiate,
    evaluate,
    inline,
)
from degloci.degeneracy import DegeneracyProblem
from degloci.errors import ProblemError
from degloci.upoly import linalg
from degloci.upoly.fields import QQ_FIELD


def composition_problem(
    outer: Sequence[str],
    inner: Sequence[str],
    variables: Sequence[str],
    outer_variables: Optional[Sequence[str]] = None,
    seed: Optional[int] = None,
    a: Optional[Sequence[Sequence]] = None,
) -> DegeneracyProblem:
    """V = {P o Q = 0} minus {Delta = 0} for a p-minor Delta of J(P o Q), F = J(P) o Q."""
    n = len(variables)
    if len(inner) != n:
        raise ProblemError(f"{len(inner)} inner polynomials for {n} variables")
    outer_variables = list(outer_variables or [f"Z{j + 1}" for j in range(n)])
    p = len(outer)
    names = [f"P{k + 1}" for k in range(p)]
    outer_circuit = differentiate(
        compile_polynomials(outer_variables, dict(zip(names, outer))), names
    )
    builder = CircuitBuilder(n)
    inner_circuit = compile_polynomials(variables, {f"Q{j + 1}": text for j, text in enumerate(inner)})
    inner_nodes = inline(builder, inner_circuit, [builder.input(j) for j in range(n)])
    q_nodes = [inner_nodes[inner_circuit.node(f"Q{j + 1}")] for j in range(n)]
    outer_nodes = inline(builder, outer_circuit, q_nodes)
    equations = [builder.output(f"G{k + 1}", outer_nodes[outer_circuit.node(name)]) for k, name in enumerate(names)]
    matrix = [
        [
            builder.output(f"F{k + 1}_{j + 1}", outer_nodes[outer_circuit.node(derivative_name(name, j))])
            for j in range(n)
        ]
        for k, name in enumerate(names)
    ]
    composed = differentiate(builder.build(equations=equations), equations)
    extended = CircuitBuilder.extending(composed)
    jacobian = [[extended.node_of(derivative_name(g, j)) for j in range(n)] for g in equations]
    rng = random.Random(f"{seed}:composition")
    sample = RingPoint.rational(QQ_FIELD, [rng.randint(-97, 97) for _ in range(n)])
    inequation = None
    for columns in combinations(range(n), p):
        node = linalg.det(extended, [[row[c] for c in columns] for row in jacobian])
        name = extended.output("Delta", node)
        trial = extended.build(equations=equations, inequation=name, matrix=matrix)
        if evaluate(trial, sample, [name])[0]:
            inequation = name
            break
    if inequation is None:
        raise ProblemError("every p-minor of J(P o Q) vanishes at a random point")
    circuit = extended.build(equations=equations, inequation=inequation, matrix=matrix)
    if a is not None:
        return DegeneracyProblem(circuit, tuple(map(tuple, a)), seed=seed, variables=tuple(variables))
    return DegeneracyProblem.with_random_matrix(circuit, seed=seed, variables=variables)
