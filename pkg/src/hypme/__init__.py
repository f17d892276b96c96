"""Radial degenerate diffusion on negatively curved geometry.

Finite-volume runs of the slow-diffusion family in five coordinate kinds,
a catalog of closed-form solutions to check them against, a quadrature
change of variables tying the curved problem to a weighted flat one, and
trace analysis turning runs into pass/fail verdicts on the asymptotic
laws: logarithmic front growth, conical pressure profile, and
(log t / t)^{1/(m-1)} sup-norm decay.
"""

from .analysis import (
    FitResult,
    euclidean_reference_distance,
    fit_log_growth,
    fit_power_growth,
    front_speed_vs_pressure_gradient,
    mass_shift_intercept,
    positivity_retained,
    profile_convergence,
    profile_error,
    sup_norm_window,
    time_monotonicity_margin,
    transform_difference,
    weighted_front_scaling,
)
from .catalog import (
    SOLUTION_KINDS,
    ClosedFormSolution,
    MatchedSubsolution,
    barenblatt,
    barenblatt_support_radius,
    gtw,
    gtw_front_position,
    gtw_front_speed,
    heat_kernel,
    heat_kernel_mass,
    log_cone,
    log_cone_edge,
    log_cone_mass,
    mass_rescale,
    model_pressure,
    plap_cone,
    pressure,
    singular_barenblatt,
    singular_barenblatt_energy,
    subsolution_matched,
)
from .checks import Check, ValidationReport, evaluate_checks, load_run
from .config import ConfigError, RunConfig, config_hash, load_config, parse_config
from .geometry import CoordinateMap, get_map, sphere_area, transform_table, weight_tail_constant
from .grid import Grid1D
from .kernels import backend_name
from .params import ModelParams
from .problem import PROBLEM_KINDS, Problem, build_problem
from .solver import (
    RunResult,
    RunTrace,
    Snapshot,
    SolverConfig,
    SolverError,
    dirac_init,
    free_boundary,
    run,
)

__version__ = "0.1.0"

__all__ = [
    "FitResult",
    "euclidean_reference_distance",
    "fit_log_growth",
    "fit_power_growth",
    "front_speed_vs_pressure_gradient",
    "mass_shift_intercept",
    "positivity_retained",
    "profile_convergence",
    "profile_error",
    "sup_norm_window",
    "time_monotonicity_margin",
    "transform_difference",
    "weighted_front_scaling",
    "SOLUTION_KINDS",
    "ClosedFormSolution",
    "MatchedSubsolution",
    "barenblatt",
    "barenblatt_support_radius",
    "gtw",
    "gtw_front_position",
    "gtw_front_speed",
    "heat_kernel",
    "heat_kernel_mass",
    "log_cone",
    "log_cone_edge",
    "log_cone_mass",
    "mass_rescale",
    "model_pressure",
    "plap_cone",
    "pressure",
    "singular_barenblatt",
    "singular_barenblatt_energy",
    "subsolution_matched",
    "Check",
    "ValidationReport",
    "evaluate_checks",
    "load_run",
    "ConfigError",
    "RunConfig",
    "config_hash",
    "load_config",
    "parse_config",
    "CoordinateMap",
    "get_map",
    "sphere_area",
    "transform_table",
    "weight_tail_constant",
    "Grid1D",
    "backend_name",
    "ModelParams",
    "PROBLEM_KINDS",
    "Problem",
    "build_problem",
    "RunResult",
    "RunTrace",
    "Snapshot",
    "SolverConfig",
    "SolverError",
    "dirac_init",
    "free_boundary",
    "run",
    "__version__",
]
