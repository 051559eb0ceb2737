"""Fractional-order Rosenzweig-MacArthur predator-prey model.

Semi-analytic solution by the homotopy perturbation method over a
two-index fractional power-series algebra, with reference time-stepping
solvers for validation.
"""

from .hpm import (
    HpmSolution,
    ModelParams,
    bracket_coeffs,
    closed_form_reference,
    evaluate_solution,
    homotopy_rhs,
    hpm_solve,
)
from .oracle import RhsVariant, SolverConfig, Trajectory, fabm_solve, rk4
from .series import Axis, FracSeries, SeriesContext

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "FracSeries",
    "HpmSolution",
    "ModelParams",
    "RhsVariant",
    "SeriesContext",
    "SolverConfig",
    "Trajectory",
    "bracket_coeffs",
    "closed_form_reference",
    "evaluate_solution",
    "fabm_solve",
    "homotopy_rhs",
    "hpm_solve",
    "rk4",
]
