"""Arithmetic circuits: representation, evaluation, derivatives, determinants, parsing."""

from degloci.circuit.builder import CircuitBuilder
from degloci.circuit.core import (
    Circuit,
    Gate,
    GateKind,
    RingPoint,
    evaluate,
    jacobian_evaluate,
    value_and_jacobian,
)
from degloci.circuit.parser import PolynomialParser, compile_polynomials, parse_polynomial
from degloci.circuit.transforms import (
    derivative_name,
    determinant_circuit,
    differentiate,
    inline,
    substitute_linear,
)

__all__ = [
    "Circuit",
    "CircuitBuilder",
    "Gate",
    "GateKind",
    "RingPoint",
    "evaluate",
    "jacobian_evaluate",
    "value_and_jacobian",
    "PolynomialParser",
    "compile_polynomials",
    "parse_polynomial",
    "derivative_name",
    "determinant_circuit",
    "differentiate",
    "inline",
    "substitute_linear",
]
