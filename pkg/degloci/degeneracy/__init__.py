"""Degeneracy loci W(a_r) of a matrix of functions on a smooth variety."""

from degloci.degeneracy.chain import ChartReport, StepDegrees, solve_chain_on_chart
from degloci.degeneracy.hitting import Chart, HittingSequence, choose_hitting_sequence
from degloci.degeneracy.membership import AlgebraicPoint, membership_test
from degloci.degeneracy.minors import ChartMinors, minor_circuit
from degloci.degeneracy.problem import (
    DegeneracyProblem,
    MatrixView,
    MinorRole,
    MinorSpec,
    TView,
    build_T,
    full_minor,
)
from degloci.degeneracy.solver import SolveReport, SolveResult, post_verify, solve, solve_modular

__all__ = [
    "AlgebraicPoint",
    "Chart",
    "ChartMinors",
    "ChartReport",
    "DegeneracyProblem",
    "HittingSequence",
    "MatrixView",
    "MinorRole",
    "MinorSpec",
    "SolveReport",
    "SolveResult",
    "StepDegrees",
    "TView",
    "build_T",
    "choose_hitting_sequence",
    "full_minor",
    "membership_test",
    "minor_circuit",
    "post_verify",
    "solve",
    "solve_chain_on_chart",
    "solve_modular",
]
