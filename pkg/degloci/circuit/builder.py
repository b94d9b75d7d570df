"""Incremental circuit construction with constant folding and gate sharing.

The builder follows the ring-context protocol, so generic algorithms
(Berkowitz, forward-mode differentiation) run over it and emit gates instead
of values.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence

from sympy.polys.domains import QQ

from degloci.circuit.core import Circuit, Gate, GateKind
from degloci.errors import ProblemError
from degloci.upoly.fields import rational


class CircuitBuilder:
    def __init__(self, n: int):
        self.n = n
        self.gates: list[Gate] = []
        self.outputs: dict[str, int] = {}
        self._index: dict[tuple, int] = {}
        self._inputs = [self._add(Gate(GateKind.INPUT, (), j)) for j in range(n)]
        # old gate index -> node, set by extending()
        self.remap: list[int] = []

    @classmethod
    def extending(cls, circuit: Circuit) -> "CircuitBuilder":
        """A builder that already holds all gates and outputs of ``circuit``."""
        builder = cls.__new__(cls)
        builder.n = circuit.n
        builder.gates = []
        builder.outputs = {}
        builder._index = {}
        remap: list[int] = []
        for gate in circuit.gates:
            args = tuple(remap[a] for a in gate.args)
            remap.append(builder._add(Gate(gate.kind, args, gate.value)))
        builder._inputs = [None] * circuit.n
        for index, gate in enumerate(circuit.gates):
            if gate.kind is GateKind.INPUT and builder._inputs[gate.value] is None:
                builder._inputs[gate.value] = remap[index]
        for j in range(circuit.n):
            if builder._inputs[j] is None:
                builder._inputs[j] = builder._add(Gate(GateKind.INPUT, (), j))
        for name, node in circuit.outputs.items():
            builder.outputs[name] = remap[node]
        builder.remap = remap
        return builder

    def _add(self, gate: Gate) -> int:
        key = (gate.kind, gate.args, gate.value)
        found = self._index.get(key)
        if found is not None:
            return found
        self.gates.append(gate)
        self._index[key] = len(self.gates) - 1
        return len(self.gates) - 1

    def constant_value(self, node: int):
        gate = self.gates[node]
        return gate.value if gate.kind is GateKind.CONST else None

    # ring protocol

    def zero(self) -> int:
        return self.constant(0)

    def one(self) -> int:
        return self.constant(1)

    def constant(self, value) -> int:
        return self._add(Gate(GateKind.CONST, (), rational(value)))

    from_rational = constant

    def input(self, j: int) -> int:
        return self._inputs[j]

    def is_zero(self, node: int) -> bool:
        value = self.constant_value(node)
        return value is not None and not value

    def add(self, a: int, b: int) -> int:
        ca, cb = self.constant_value(a), self.constant_value(b)
        if ca is not None and cb is not None:
            return self.constant(ca + cb)
        if ca is not None and not ca:
            return b
        if cb is not None and not cb:
            return a
        return self._add(Gate(GateKind.ADD, (min(a, b), max(a, b))))

    def sub(self, a: int, b: int) -> int:
        ca, cb = self.constant_value(a), self.constant_value(b)
        if ca is not None and cb is not None:
            return self.constant(ca - cb)
        if cb is not None and not cb:
            return a
        if ca is not None and not ca:
            return self.neg(b)
        if a == b:
            return self.zero()
        return self._add(Gate(GateKind.SUB, (a, b)))

    def neg(self, a: int) -> int:
        ca = self.constant_value(a)
        if ca is not None:
            return self.constant(-ca)
        gate = self.gates[a]
        if gate.kind is GateKind.NEG:
            return gate.args[0]
        return self._add(Gate(GateKind.NEG, (a,)))

    def mul(self, a: int, b: int) -> int:
        ca, cb = self.constant_value(a), self.constant_value(b)
        if ca is not None and cb is not None:
            return self.constant(ca * cb)
        for c, other in ((ca, b), (cb, a)):
            if c is None:
                continue
            if not c:
                return self.zero()
            if c == QQ.one:
                return other
            if c == -QQ.one:
                return self.neg(other)
        return self._add(Gate(GateKind.MUL, (min(a, b), max(a, b))))

    def div(self, a: int, c) -> int:
        """a / c for a nonzero rational constant c."""
        c = rational(c)
        if not c:
            raise ProblemError("division by zero")
        ca = self.constant_value(a)
        if ca is not None:
            return self.constant(ca / c)
        if c == QQ.one:
            return a
        return self._add(Gate(GateKind.DIV, (a,), c))

    def power(self, a: int, k: int) -> int:
        result, base = self.one(), a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def linear_combination(self, coeffs: Sequence, nodes: Sequence[int]) -> int:
        acc = self.zero()
        for c, node in zip(coeffs, nodes):
            acc = self.add(acc, self.mul(self.constant(c), node))
        return acc

    # outputs

    def output(self, name: str, node: int) -> str:
        self.outputs[name] = node
        return name

    def build(
        self,
        equations: Sequence[str] = (),
        inequation: Optional[str] = None,
        matrix: Sequence[Sequence[str]] = (),
        declared_degree: Optional[int] = None,
    ) -> Circuit:
        return Circuit(
            n=self.n,
            gates=tuple(self.gates),
            outputs=dict(self.outputs),
            equations=tuple(equations),
            inequation=inequation,
            matrix=tuple(tuple(row) for row in matrix),
            declared_degree=declared_degree,
        )

    def node_of(self, value: Any) -> int:
        """Accept either an existing node index or an output name."""
        if isinstance(value, str):
            try:
                return self.outputs[value]
            except KeyError:
                raise ProblemError(f"unknown output {value!r}") from None
        return value
