"""Kronecker-style geometric resolution engine over lifting fibres."""

from degloci.kronecker.changes import change_coordinates, change_lifting_point, change_primitive_element
from degloci.kronecker.clean import CleanMode, clean_nonzeros
from degloci.kronecker.curve import KroneckerCurve, lift_curve
from degloci.kronecker.fiber import (
    EMPTY,
    GeometricResolution,
    LiftingFiber,
    check_fiber,
    identity_matrix,
    to_resolution,
)
from degloci.kronecker.intersect import intersect_with_hypersurface
from degloci.kronecker.merge import merge_resolutions
from degloci.kronecker.padic import lift_fiber, lifting_precision
from degloci.kronecker.square import ambient_fiber, random_noether_matrix, solve_square_subsystem

__all__ = [
    "EMPTY",
    "CleanMode",
    "GeometricResolution",
    "KroneckerCurve",
    "LiftingFiber",
    "ambient_fiber",
    "change_coordinates",
    "change_lifting_point",
    "change_primitive_element",
    "check_fiber",
    "clean_nonzeros",
    "identity_matrix",
    "intersect_with_hypersurface",
    "lift_curve",
    "lift_fiber",
    "lifting_precision",
    "merge_resolutions",
    "random_noether_matrix",
    "solve_square_subsystem",
    "to_resolution",
]
