"""Exact univariate arithmetic: polynomials, residue rings, series, reconstruction."""

from degloci.upoly.fields import QQ_FIELD, PrimeField, PrimePowerRing, RationalField, rational
from degloci.upoly.lifting import newton_series_lift
from degloci.upoly.modular import (
    crt_and_rational_reconstruction,
    random_prime,
    rational_reconstruction,
    reconstruct_poly,
)
from degloci.upoly.poly import UPoly, gcd, gcdex, interpolate, is_squarefree, resultant, sqf_part
from degloci.upoly.resultants import ParametricResultant, resultant_with_parameter
from degloci.upoly.rings import QuotientRing, ScalarSeriesRing, SeriesRing

__all__ = [
    "QQ_FIELD",
    "PrimeField",
    "PrimePowerRing",
    "RationalField",
    "rational",
    "UPoly",
    "gcd",
    "gcdex",
    "interpolate",
    "is_squarefree",
    "resultant",
    "sqf_part",
    "ParametricResultant",
    "resultant_with_parameter",
    "crt_and_rational_reconstruction",
    "random_prime",
    "rational_reconstruction",
    "reconstruct_poly",
    "newton_series_lift",
    "QuotientRing",
    "ScalarSeriesRing",
    "SeriesRing",
]
