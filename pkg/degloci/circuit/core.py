"""Essentially division-free arithmetic circuits and their evaluation.

A circuit is a topologically ordered list of gates. The only division allowed
is by a nonzero rational constant. Evaluation is generic: any ring context
following the protocol of :mod:`degloci.upoly.rings` can be plugged in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Optional, Sequence

from cachetools import LRUCache

from degloci.errors import ProblemError
from degloci.upoly.fields import rational


class GateKind(str, Enum):
    INPUT = "input"
    CONST = "const"
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    NEG = "neg"
    DIV = "div"  # by the rational constant stored in ``value``


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    args: tuple[int, ...] = ()
    value: Any = None


@dataclass(frozen=True)
class Circuit:
    """Immutable straight-line program with named outputs.

    ``equations`` (G), ``inequation`` (H) and ``matrix`` (F, p rows of s
    output names) are optional groups of output names.
    """

    n: int
    gates: tuple[Gate, ...]
    outputs: Mapping[str, int]
    equations: tuple[str, ...] = ()
    inequation: Optional[str] = None
    matrix: tuple[tuple[str, ...], ...] = ()
    declared_degree: Optional[int] = None
    _cones: LRUCache = field(
        default_factory=lambda: LRUCache(maxsize=256), compare=False, repr=False, hash=False
    )

    def __post_init__(self):
        for index, gate in enumerate(self.gates):
            if any(a >= index or a < 0 for a in gate.args):
                raise ProblemError(f"gate {index} refers to a later gate")
            if gate.kind is GateKind.INPUT and not 0 <= gate.value < self.n:
                raise ProblemError(f"gate {index} reads input {gate.value} of {self.n}")
            if gate.kind is GateKind.DIV and not gate.value:
                raise ProblemError(f"gate {index} divides by zero")
        for name in self._grouped_names():
            if name not in self.outputs:
                raise ProblemError(f"unknown output {name!r}")
        if self.matrix and len({len(row) for row in self.matrix}) != 1:
            raise ProblemError("matrix rows have different lengths")

    def __hash__(self) -> int:
        return id(self)

    def _grouped_names(self):
        yield from self.equations
        if self.inequation is not None:
            yield self.inequation
        for row in self.matrix:
            yield from row

    @property
    def size(self) -> int:
        """L, the number of gates."""
        return len(self.gates)

    @property
    def q(self) -> int:
        return len(self.equations)

    @property
    def p(self) -> int:
        return len(self.matrix)

    @property
    def s(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def node(self, name: str) -> int:
        try:
            return self.outputs[name]
        except KeyError:
            raise ProblemError(f"unknown output {name!r}") from None

    def cone(self, names: Sequence[str]) -> tuple[int, ...]:
        """Indices of the gates the given outputs depend on, in order."""
        key = tuple(names)
        cached = self._cones.get(key)
        if cached is not None:
            return cached
        needed = set()
        stack = [self.node(name) for name in names]
        while stack:
            index = stack.pop()
            if index in needed:
                continue
            needed.add(index)
            stack.extend(self.gates[index].args)
        result = tuple(sorted(needed))
        self._cones[key] = result
        return result

    def degrees(self) -> list[int]:
        """Upper bounds for the degree of every gate; -1 marks the zero polynomial."""
        bounds: list[int] = []
        for gate in self.gates:
            kind = gate.kind
            if kind is GateKind.INPUT:
                bounds.append(1)
            elif kind is GateKind.CONST:
                bounds.append(0 if gate.value else -1)
            elif kind in (GateKind.ADD, GateKind.SUB):
                bounds.append(max(bounds[gate.args[0]], bounds[gate.args[1]]))
            elif kind is GateKind.MUL:
                a, b = bounds[gate.args[0]], bounds[gate.args[1]]
                bounds.append(-1 if a < 0 or b < 0 else a + b)
            else:
                bounds.append(bounds[gate.args[0]])
        return bounds

    def degree_of(self, name: str) -> int:
        bound = self.degrees()[self.node(name)]
        if self.declared_degree is not None:
            bound = min(bound, self.declared_degree)
        return bound

    @property
    def degree(self) -> int:
        """d: declared, or the largest propagated bound over all outputs."""
        if self.declared_degree is not None:
            return self.declared_degree
        bounds = self.degrees()
        return max((bounds[i] for i in self.outputs.values()), default=0)

    def with_groups(
        self,
        equations: Sequence[str] = (),
        inequation: Optional[str] = None,
        matrix: Sequence[Sequence[str]] = (),
    ) -> "Circuit":
        return Circuit(
            n=self.n,
            gates=self.gates,
            outputs=self.outputs,
            equations=tuple(equations),
            inequation=inequation,
            matrix=tuple(tuple(row) for row in matrix),
            declared_degree=self.declared_degree,
        )


@dataclass(frozen=True)
class RingPoint:
    """n coordinates living in one ring context."""

    ring: Any
    coords: tuple

    @classmethod
    def of(cls, ring, coords: Sequence) -> "RingPoint":
        return cls(ring, tuple(coords))

    @classmethod
    def rational(cls, ring, values: Sequence) -> "RingPoint":
        return cls(ring, tuple(ring.from_rational(rational(v)) for v in values))


def _inputs(circuit: Circuit, point: RingPoint) -> tuple:
    if len(point.coords) != circuit.n:
        raise ProblemError(f"point has {len(point.coords)} coordinates, circuit needs {circuit.n}")
    return point.coords


def evaluate(
    circuit: Circuit, point: RingPoint, outputs: Optional[Sequence[str]] = None
) -> list:
    """Values of the selected outputs (all outputs by default) at ``point``."""
    coords = _inputs(circuit, point)
    ring = point.ring
    names = list(circuit.outputs) if outputs is None else list(outputs)
    values: dict[int, Any] = {}
    for index in circuit.cone(names):
        gate = circuit.gates[index]
        kind = gate.kind
        if kind is GateKind.INPUT:
            values[index] = coords[gate.value]
        elif kind is GateKind.CONST:
            values[index] = ring.from_rational(gate.value)
        elif kind is GateKind.ADD:
            values[index] = ring.add(values[gate.args[0]], values[gate.args[1]])
        elif kind is GateKind.SUB:
            values[index] = ring.sub(values[gate.args[0]], values[gate.args[1]])
        elif kind is GateKind.MUL:
            values[index] = ring.mul(values[gate.args[0]], values[gate.args[1]])
        elif kind is GateKind.NEG:
            values[index] = ring.neg(values[gate.args[0]])
        else:
            values[index] = ring.mul(values[gate.args[0]], ring.from_rational(1 / gate.value))
    return [values[circuit.node(name)] for name in names]


def value_and_jacobian(
    circuit: Circuit,
    point: RingPoint,
    outputs: Sequence[str],
    directions: Optional[Sequence[Sequence[Any]]] = None,
) -> tuple[list, list[list]]:
    """Values and forward-mode derivatives of ``outputs``.

    ``directions`` are rational vectors of length n; the result has one column
    per direction (the coordinate axes by default), so column k holds the
    derivative along ``directions[k]``.
    """
    coords = _inputs(circuit, point)
    ring = point.ring
    n = circuit.n
    if directions is None:
        directions = [[1 if i == k else 0 for i in range(n)] for k in range(n)]
    seeds = [[ring.from_rational(rational(d[i])) for d in directions] for i in range(n)]
    width = len(directions)
    zero = ring.zero()
    values: dict[int, Any] = {}
    tangents: dict[int, list] = {}
    for index in circuit.cone(outputs):
        gate = circuit.gates[index]
        kind = gate.kind
        if kind is GateKind.INPUT:
            values[index] = coords[gate.value]
            tangents[index] = seeds[gate.value]
            continue
        if kind is GateKind.CONST:
            values[index] = ring.from_rational(gate.value)
            tangents[index] = [zero] * width
            continue
        a = gate.args[0]
        va, ta = values[a], tangents[a]
        if kind is GateKind.NEG:
            values[index] = ring.neg(va)
            tangents[index] = [ring.neg(x) for x in ta]
        elif kind is GateKind.DIV:
            scale = ring.from_rational(1 / gate.value)
            values[index] = ring.mul(va, scale)
            tangents[index] = [ring.mul(x, scale) for x in ta]
        else:
            b = gate.args[1]
            vb, tb = values[b], tangents[b]
            if kind is GateKind.ADD:
                values[index] = ring.add(va, vb)
                tangents[index] = [ring.add(x, y) for x, y in zip(ta, tb)]
            elif kind is GateKind.SUB:
                values[index] = ring.sub(va, vb)
                tangents[index] = [ring.sub(x, y) for x, y in zip(ta, tb)]
            else:
                values[index] = ring.mul(va, vb)
                tangents[index] = [
                    ring.add(ring.mul(va, y), ring.mul(vb, x)) for x, y in zip(ta, tb)
                ]
    nodes = [circuit.node(name) for name in outputs]
    return [values[i] for i in nodes], [list(tangents[i]) for i in nodes]


def jacobian_evaluate(
    circuit: Circuit,
    point: RingPoint,
    outputs: Sequence[str],
    directions: Optional[Sequence[Sequence[Any]]] = None,
) -> list[list]:
    """Jacobian matrix (rows: outputs, columns: directions) at ``point``."""
    return value_and_jacobian(circuit, point, outputs, directions)[1]
