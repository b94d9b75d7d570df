"""Circuit-to-circuit constructions: determinants, derivatives, substitutions."""

from __future__ import annotations

from typing import Any, Sequence, Union

from degloci.circuit.builder import CircuitBuilder
from degloci.circuit.core import Circuit, GateKind
from degloci.errors import ProblemError
from degloci.upoly import linalg

# a matrix entry is an output name or a rational constant
Entry = Union[str, Any]


def entry_node(builder: CircuitBuilder, entry: Entry) -> int:
    if isinstance(entry, str):
        return builder.node_of(entry)
    return builder.constant(entry)


def determinant_circuit(circuit: Circuit, entries: Sequence[Sequence[Entry]], name: str) -> Circuit:
    """Append a division-free (Berkowitz) determinant of ``entries`` as output ``name``."""
    size = len(entries)
    if any(len(row) != size for row in entries):
        raise ProblemError("determinant of a non-square view")
    builder = CircuitBuilder.extending(circuit)
    nodes = [[entry_node(builder, e) for e in row] for row in entries]
    builder.output(name, linalg.det(builder, nodes))
    return builder.build(
        equations=circuit.equations,
        inequation=circuit.inequation,
        matrix=circuit.matrix,
        declared_degree=circuit.declared_degree,
    )


def derivative_name(name: str, j: int) -> str:
    return f"d{name}_dX{j + 1}"


def differentiate(circuit: Circuit, outputs: Sequence[str]) -> Circuit:
    """Append the partial derivatives of ``outputs`` (forward mode over the builder).

    Output ``d<name>_dX<j>`` holds the derivative of ``name`` in X_j.
    """
    builder = CircuitBuilder.extending(circuit)
    node = builder.remap
    cone = circuit.cone(outputs)
    for j in range(circuit.n):
        tangent: dict[int, int] = {}
        for index in cone:
            gate = circuit.gates[index]
            kind = gate.kind
            if kind is GateKind.INPUT:
                tangent[index] = builder.one() if gate.value == j else builder.zero()
            elif kind is GateKind.CONST:
                tangent[index] = builder.zero()
            elif kind is GateKind.NEG:
                tangent[index] = builder.neg(tangent[gate.args[0]])
            elif kind is GateKind.DIV:
                tangent[index] = builder.div(tangent[gate.args[0]], gate.value)
            elif kind is GateKind.ADD:
                tangent[index] = builder.add(tangent[gate.args[0]], tangent[gate.args[1]])
            elif kind is GateKind.SUB:
                tangent[index] = builder.sub(tangent[gate.args[0]], tangent[gate.args[1]])
            else:
                a, b = gate.args
                tangent[index] = builder.add(
                    builder.mul(node[a], tangent[b]), builder.mul(node[b], tangent[a])
                )
        for name in outputs:
            builder.output(derivative_name(name, j), tangent[circuit.node(name)])
    return builder.build(
        equations=circuit.equations,
        inequation=circuit.inequation,
        matrix=circuit.matrix,
        declared_degree=circuit.declared_degree,
    )


def inline(builder: CircuitBuilder, circuit: Circuit, inputs: Sequence[int]) -> list[int]:
    """Copy the gates of ``circuit`` into ``builder`` with input j read from node ``inputs[j]``.

    Returns the node of every copied gate.
    """
    if len(inputs) != circuit.n:
        raise ProblemError(f"{len(inputs)} input nodes for a circuit in {circuit.n} variables")
    remap: list[int] = []
    for gate in circuit.gates:
        args = [remap[a] for a in gate.args]
        kind = gate.kind
        if kind is GateKind.INPUT:
            remap.append(inputs[gate.value])
        elif kind is GateKind.CONST:
            remap.append(builder.constant(gate.value))
        elif kind is GateKind.ADD:
            remap.append(builder.add(*args))
        elif kind is GateKind.SUB:
            remap.append(builder.sub(*args))
        elif kind is GateKind.MUL:
            remap.append(builder.mul(*args))
        elif kind is GateKind.NEG:
            remap.append(builder.neg(args[0]))
        else:
            remap.append(builder.div(args[0], gate.value))
    return remap


def substitute_linear(circuit: Circuit, matrix: Sequence[Sequence[Any]], shift: Sequence[Any] = ()) -> Circuit:
    """The circuit of X -> f(A X + b): input j is replaced by sum_k A[j][k] X_k + b_j."""
    n = circuit.n
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ProblemError(f"substitution matrix must be {n}x{n}")
    shift = list(shift) or [0] * n
    builder = CircuitBuilder(n)
    inputs = [builder.input(k) for k in range(n)]
    replaced = [
        builder.add(builder.linear_combination(matrix[j], inputs), builder.constant(shift[j]))
        for j in range(n)
    ]
    remap = inline(builder, circuit, replaced)
    for name, node in circuit.outputs.items():
        builder.output(name, remap[node])
    return builder.build(
        equations=circuit.equations,
        inequation=circuit.inequation,
        matrix=circuit.matrix,
        declared_degree=circuit.declared_degree,
    )
