"""Applications built on the degeneracy solver."""

from degloci.applications.composition import composition_problem
from degloci.applications.endomorphism import FiberResult, endomorphism_problem, generic_fiber
from degloci.applications.homotopy import HomotopyResult, homotopy_count, homotopy_problem
from degloci.applications.polar import (
    PolarResult,
    PolarTask,
    polar_circuit,
    polar_problem,
    polar_sample_points,
    shifted_spheres_task,
    sphere_task,
)
from degloci.applications.realroots import (
    RealPoint,
    approximate,
    isolate_real_roots,
    real_points,
    refine_root,
    sturm_count,
)

__all__ = [
    "FiberResult",
    "HomotopyResult",
    "PolarResult",
    "PolarTask",
    "RealPoint",
    "approximate",
    "composition_problem",
    "endomorphism_problem",
    "generic_fiber",
    "homotopy_count",
    "homotopy_problem",
    "isolate_real_roots",
    "polar_circuit",
    "polar_problem",
    "polar_sample_points",
    "real_points",
    "refine_root",
    "shifted_spheres_task",
    "sphere_task",
    "sturm_count",
]
