"""Resonance scattering off a spherical shell, Hardy-class wavefunctions and bound audits."""

__version__ = "0.1.0"

from ._kernels import BACKEND_NAME
from .audit import BoundReport, kernel_bound_audit, wavefunction_growth_profile
from .evolution import EvolutionReport, decay_law, evolve, gamow_functional, semigroup_asymmetry
from .hardy import BumpSpec, evaluate_halfplane, fourier_transform, hardy_norm_on_line, is_hardy, make_bump, restrict_positive
from .poles import GamowPole, Rectangle, find_poles
from .sampled import SampledFunction
from .scatter import (
    ComplexMomentum,
    JostData,
    PotentialSpec,
    RegionSolution,
    continued_ket,
    jost_function,
    ls_ket,
    match_coefficients,
    s_matrix,
)
from .transform import TransformPlan, intertwining_check, make_plan, moller_apply, to_energy, to_position

__all__ = [
    "BACKEND_NAME",
    "BoundReport",
    "BumpSpec",
    "ComplexMomentum",
    "EvolutionReport",
    "GamowPole",
    "JostData",
    "PotentialSpec",
    "Rectangle",
    "RegionSolution",
    "SampledFunction",
    "TransformPlan",
    "continued_ket",
    "decay_law",
    "evaluate_halfplane",
    "evolve",
    "find_poles",
    "fourier_transform",
    "gamow_functional",
    "hardy_norm_on_line",
    "intertwining_check",
    "is_hardy",
    "jost_function",
    "kernel_bound_audit",
    "ls_ket",
    "make_bump",
    "make_plan",
    "match_coefficients",
    "moller_apply",
    "restrict_positive",
    "s_matrix",
    "semigroup_asymmetry",
    "to_energy",
    "to_position",
    "wavefunction_growth_profile",
]
