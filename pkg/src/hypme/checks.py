"""Named verdicts: turn a config's [validate] section into a report.

Each [validate] key (or small key group) triggers one named check.  A check
compares one measured number against a target with a tolerance, where the
comparison is two-sided (|measured - target| <= tol), a lower bound, or an
upper bound.  Closed-form checks (solution residuals, coordinate-map
accuracy, kernel masses) need no run data; trace checks read a run
directory written by ``write_run``; cross-run checks additionally name a
companion run directory, resolved relative to the validated one.

All thresholds come from the config text, so a report is reproducible from
the config alone.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import analysis, catalog, residuals
from .config import RunConfig, load_config
from .geometry import get_map
from .grid import Grid1D
from .io import CONFIG_FILE, LoadedRun, read_run
from .params import ModelParams
from .problem import build_problem
from .solver import RunResult

# keys whose checks read trace/profile files from the run directory
TRACE_KEYS = frozenset((
    "gamma_range",
    "mass_drift_max",
    "profile_ratio_max",
    "supnorm_ratio_max",
    "benilan_coeff",
    "retention",
    "darcy_max_mismatch",
    "smalltime_ratio_max",
    "weighted_variation_max",
    "mass_shift_tol",
    "transform_max_rel",
    "convergence_ratio_range",
))


@dataclass(frozen=True)
class Check:
    """One measured number against a target, under a comparison mode."""

    name: str
    measured: float
    target: float
    tolerance: float
    mode: str  # "abs" | "lower" | "upper"

    def __post_init__(self) -> None:
        if self.mode not in ("abs", "lower", "upper"):
            raise ValueError(f"unknown comparison mode {self.mode!r}")
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")

    @property
    def passed(self) -> bool:
        if self.mode == "abs":
            return abs(self.measured - self.target) <= self.tolerance
        if self.mode == "lower":
            return self.measured >= self.target - self.tolerance
        return self.measured <= self.target + self.tolerance


@dataclass(frozen=True)
class ValidationReport:
    """Ordered list of checks; passes only if every check does."""

    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def rows(self) -> list[tuple[str, float, float, float, bool]]:
        return [(c.name, c.measured, c.target, c.tolerance, c.passed) for c in self.checks]

    def __getitem__(self, name: str) -> Check:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


def _bracket(pair: tuple[float, float]) -> tuple[float, float]:
    """Bracket membership as target = midpoint, tolerance = half width."""
    lo, hi = pair
    return 0.5 * (lo + hi), 0.5 * (hi - lo)


def _need(checks: dict, trigger: str, *keys: str) -> None:
    missing = [key for key in keys if key not in checks]
    if missing:
        raise ValueError(f"[validate] {trigger} also needs " + ", ".join(missing))


def rebuild_result(loaded: LoadedRun, cfg: RunConfig) -> RunResult:
    """Reconstruct a RunResult, final grid included, from emitted files.

    Grid extension is deterministic, so replaying it from the configured
    grid and the recorded extension count reproduces the solver's final
    faces exactly.
    """
    if cfg.grid is None:
        raise ValueError("config has no [grid]; nothing to rebuild")
    grid: Grid1D = cfg.grid
    for _ in range(int(loaded.meta.get("grid_extensions", "0"))):
        grid = grid.extended(cfg.solver.extend_factor)
    if loaded.snapshots and grid.num_cells < loaded.snapshots[-1].u.size:
        raise ValueError("stored profiles exceed the reconstructed grid")
    problem = build_problem(cfg.kind, cfg.params, grid)
    return RunResult(
        problem=problem,
        trace=loaded.trace,
        snapshots=loaded.snapshots,
        steps=int(loaded.meta.get("steps", "0")),
        newton_iterations=int(loaded.meta.get("newton_iterations", "0")),
        extensions=int(loaded.meta.get("grid_extensions", "0")),
        backend=loaded.meta.get("backend", "unknown"),
    )


def load_run(run_dir: str) -> tuple[RunConfig, RunResult]:
    """Read a run directory (its own config.cfg included) back into memory."""
    cfg = load_config(os.path.join(run_dir, CONFIG_FILE))
    return cfg, rebuild_result(read_run(run_dir), cfg)


def _default_window(checks: dict, trace) -> tuple[float, float]:
    """fit_window if configured, else the last 1.5 decades of the trace."""
    if "fit_window" in checks:
        return checks["fit_window"]
    t_hi = float(trace.t[-1])
    return t_hi / 10.0**1.5, t_hi


def _snapshot_time_near(result: RunResult, t: float) -> float:
    times = np.array([snap.t for snap in result.snapshots])
    return float(times[np.argmin(np.abs(np.log(times / t)))])


# --------------------------------------------------------------------------
# closed-form checks (no run data)
# --------------------------------------------------------------------------

def _check_gtw(tol: float) -> Check:
    worst = 0.0
    for m in (2.0, 3.0):
        for n in (2, 3):
            params = ModelParams(n=n, m=m)
            for t in (0.5, 1.0, 5.0, 10.0, 100.0):
                front = catalog.gtw_front_position(t, params)
                y = np.geomspace(front * 1.001, front * 100.0, 50)
                res = residuals.gtw_residual(y, t, params)
                worst = max(worst, float(np.max(np.abs(res))))
    return Check("gtw-residual", worst, 0.0, tol, "abs")


def _check_log_cone(params: ModelParams, floor: float) -> Check:
    worst = math.inf
    for t in (10.0, 100.0, 1000.0):
        edge = catalog.log_cone_edge(t, params)
        r = np.linspace(1e-3, edge * 0.999, 333)
        res = residuals.log_cone_residual(r, t, params)
        worst = min(worst, float(np.min(res)))
    return Check("log-cone-sign", worst, 0.0, abs(floor), "lower")


def _check_subsolution(params: ModelParams, tol: float) -> Check:
    sub = catalog.subsolution_matched(params)
    worst = -math.inf
    for factor in (10.0, 100.0, 1000.0):
        report = sub.verify(sub.t_min * factor)
        worst = max(worst, report["max_outer_residual"], report["max_inner_residual"])
    return Check("subsolution-sign", worst, 0.0, tol, "upper")


def _check_map_closed_form(tol: float) -> Check:
    cmap = get_map(3)
    r = np.geomspace(1e-2, 15.0, 400)
    exact = 0.5 * np.expm1(2.0 * r)
    rel = np.abs(cmap.r_to_s(r) / exact - 1.0)
    return Check("map-closed-form", float(rel.max()), 0.0, tol, "abs")


def _check_map_roundtrip(tol: float) -> Check:
    cmap = get_map(3)
    r = np.geomspace(1e-2, 15.0, 400)
    err = np.abs(cmap.s_to_r(cmap.r_to_s(r)) - r)
    return Check("map-roundtrip", float(err.max()), 0.0, tol, "abs")


def _check_kernel_mass(n: int, tol: float) -> Check:
    worst = max(abs(catalog.heat_kernel_mass(t, n) - 1.0) for t in (0.5, 2.0))
    return Check(f"kernel-mass-h{n}", worst, 0.0, tol, "abs")


def _check_kernel_residual(tol: float) -> Check:
    worst = 0.0
    for n in (2, 3):
        for t in (0.5, 1.0, 2.0):
            r = np.linspace(0.3, 4.0, 12)
            res = residuals.heat_kernel_residual(r, t, n)
            worst = max(worst, float(np.max(np.abs(res))))
    return Check("kernel-residual", worst, 0.0, tol, "abs")


def _check_kernel_positive() -> Check:
    r = np.linspace(0.0, 8.0, 60)
    low = min(float(np.min(catalog.heat_kernel(r, t, 2))) for t in (0.5, 2.0))
    return Check("kernel-positive-h2", low, 0.0, 0.0, "lower")


def _check_plap_residual(tol: float) -> Check:
    params = ModelParams(n=3, p=3.0)
    worst = 0.0
    xi = np.linspace(1e-3, 5.0, 200)
    worst = max(worst, float(np.max(np.abs(residuals.plap_profile_residual(xi, params)))))
    for t in (10.0, 100.0):
        edge = params.gamma * math.log(t)
        r = np.linspace(1e-3, edge * 0.999, 200)
        res = residuals.plap_cone_residual(r, t, params)
        # the cone is a supersolution off-axis; exactness holds for the
        # profile operator, so only negative excursions count against it
        worst = max(worst, float(np.max(np.maximum(-res, 0.0))))
    return Check("plap-cone-residual", worst, 0.0, tol, "abs")


# --------------------------------------------------------------------------
# trace checks
# --------------------------------------------------------------------------

def _check_front_slope(result: RunResult, checks: dict) -> Check:
    window = _default_window(checks, result.trace)
    fit = analysis.fit_log_growth(result.trace, *window)
    target, tol = _bracket(checks["gamma_range"])
    return Check("front-log-slope", fit.slope, target, tol, "abs")


def _check_mass_drift(result: RunResult, tol: float) -> Check:
    mass = result.trace.mass
    drift = float(np.max(np.abs(mass - mass[0])) / mass[0])
    return Check("mass-drift", drift, 0.0, tol, "abs")


def _check_profile_shrink(result: RunResult, params: ModelParams, checks: dict) -> Check:
    t_early, t_late = checks.get("profile_window", _default_window(checks, result.trace))
    t_early = _snapshot_time_near(result, t_early)
    t_late = _snapshot_time_near(result, t_late)
    out = analysis.profile_convergence(result, params, t_early, t_late)
    ratio = out["error_late"] / out["error_early"]
    return Check("profile-shrink", ratio, 0.0, checks["profile_ratio_max"], "abs")


def _check_supnorm_ratio(result: RunResult, params: ModelParams, checks: dict) -> Check:
    window = checks.get("supnorm_window", _default_window(checks, result.trace))
    out = analysis.sup_norm_window(result.trace, params, *window)
    return Check("sup-norm-ratio", out["ratio"], 1.0, checks["supnorm_ratio_max"] - 1.0, "abs")


def _check_benilan(result: RunResult, params: ModelParams, coeff: float, grid: Grid1D) -> Check:
    margin = analysis.time_monotonicity_margin(result, params)
    h = float(np.max(grid.widths))
    return Check("benilan-margin", margin, 0.0, coeff * h * h, "lower")


def _check_retention(result: RunResult) -> Check:
    retained = analysis.positivity_retained(result)
    front_monotone = bool(np.all(np.diff(result.trace.front) >= 0.0))
    return Check("retention", float(retained and front_monotone), 1.0, 0.0, "abs")


def _check_darcy(result: RunResult, params: ModelParams, checks: dict) -> Check:
    window = checks.get("darcy_window", _default_window(checks, result.trace))
    times = [snap.t for snap in result.snapshots if window[0] <= snap.t <= window[1]]
    if not times:
        raise ValueError("no stored profiles inside darcy_window")
    worst = max(
        analysis.front_speed_vs_pressure_gradient(result, params, t)["relative_mismatch"]
        for t in times
    )
    return Check("darcy-mismatch", worst, 0.0, checks["darcy_max_mismatch"], "abs")


def _check_smalltime(result: RunResult, params: ModelParams, checks: dict) -> Check:
    _need(checks, "smalltime_ratio_max", "smalltime_pair")
    t_lo, t_hi = checks["smalltime_pair"]
    t_lo = _snapshot_time_near(result, t_lo)
    t_hi = _snapshot_time_near(result, t_hi)
    d_lo = analysis.euclidean_reference_distance(result, params, t_lo)
    d_hi = analysis.euclidean_reference_distance(result, params, t_hi)
    return Check("small-time-order", d_lo / d_hi, 0.0, checks["smalltime_ratio_max"], "upper")


def _check_weighted_variation(result: RunResult, params: ModelParams, checks: dict) -> Check:
    window = checks.get("weighted_window", _default_window(checks, result.trace))
    out = analysis.weighted_front_scaling(result, params, *window)
    return Check(
        "weighted-front-variation", out["variation"], 0.0,
        checks["weighted_variation_max"], "abs",
    )


def _check_mass_shift(result: RunResult, cfg: RunConfig, run_dir: str, checks: dict) -> Check:
    _need(checks, "mass_shift_tol", "mass_shift_companion")
    companion_cfg, companion = _load_companion(run_dir, checks["mass_shift_companion"])
    ratio = cfg.params.M / companion_cfg.params.M
    window = _default_window(checks, result.trace)
    out = analysis.mass_shift_intercept(companion, result, cfg.params, ratio, *window)
    return Check(
        "mass-shift", out["shift_measured"], out["shift_predicted"],
        checks["mass_shift_tol"], "abs",
    )


def _check_transform(result: RunResult, run_dir: str, checks: dict) -> Check:
    _need(checks, "transform_max_rel", "transform_companion", "transform_t")
    _, companion = _load_companion(run_dir, checks["transform_companion"])
    out = analysis.transform_difference(companion, result, checks["transform_t"])
    return Check("transform-agreement", out["l1_relative"], 0.0, checks["transform_max_rel"], "abs")


def _check_convergence(result: RunResult, cfg: RunConfig, run_dir: str, checks: dict) -> Check:
    _need(checks, "convergence_ratio_range", "convergence_companion", "convergence_time")
    _, coarse = _load_companion(run_dir, checks["convergence_companion"])
    t = checks["convergence_time"]
    err_coarse = analysis.euclidean_reference_distance(coarse, cfg.params, t)
    err_fine = analysis.euclidean_reference_distance(result, cfg.params, t)
    target, tol = _bracket(checks["convergence_ratio_range"])
    return Check("convergence-ratio", err_coarse / err_fine, target, tol, "abs")


def _load_companion(run_dir: str, rel_path: str) -> tuple[RunConfig, RunResult]:
    path = os.path.normpath(os.path.join(run_dir, rel_path))
    if not os.path.isdir(path):
        raise FileNotFoundError(f"companion run directory {path!r} not found")
    return load_run(path)


def evaluate_checks(cfg: RunConfig, run_dir: str | None = None) -> ValidationReport:
    """Evaluate every check the config's [validate] section enables."""
    checks = cfg.checks
    params = cfg.params
    out: list[Check] = []

    needs_run = any(key in TRACE_KEYS for key in checks)
    result: RunResult | None = None
    if needs_run:
        if run_dir is None:
            raise ValueError("these checks need a run directory")
        loaded = read_run(run_dir)
        if loaded.cfg_hash != cfg.hash:
            raise ValueError(
                f"run directory was produced by config {loaded.cfg_hash}, "
                f"validating against {cfg.hash}"
            )
        result = rebuild_result(loaded, cfg)

    if "gtw_residual_max" in checks:
        out.append(_check_gtw(checks["gtw_residual_max"]))
    if "logcone_min_residual" in checks:
        out.append(_check_log_cone(params, checks["logcone_min_residual"]))
    if "subsolution_max_residual" in checks:
        out.append(_check_subsolution(params, checks["subsolution_max_residual"]))
    if "map_rel_tol" in checks:
        out.append(_check_map_closed_form(checks["map_rel_tol"]))
    if "map_roundtrip_tol" in checks:
        out.append(_check_map_roundtrip(checks["map_roundtrip_tol"]))
    if "kernel_mass_tol_h3" in checks:
        out.append(_check_kernel_mass(3, checks["kernel_mass_tol_h3"]))
    if "kernel_mass_tol_h2" in checks:
        out.append(_check_kernel_mass(2, checks["kernel_mass_tol_h2"]))
        out.append(_check_kernel_positive())
    if "kernel_residual_max" in checks:
        out.append(_check_kernel_residual(checks["kernel_residual_max"]))
    if "plap_residual_max" in checks:
        out.append(_check_plap_residual(checks["plap_residual_max"]))

    if result is not None:
        if "gamma_range" in checks:
            out.append(_check_front_slope(result, checks))
        if "mass_drift_max" in checks:
            out.append(_check_mass_drift(result, checks["mass_drift_max"]))
        if "profile_ratio_max" in checks:
            out.append(_check_profile_shrink(result, params, checks))
        if "supnorm_ratio_max" in checks:
            out.append(_check_supnorm_ratio(result, params, checks))
        if "benilan_coeff" in checks:
            out.append(_check_benilan(result, params, checks["benilan_coeff"], cfg.grid))
        if checks.get("retention"):
            out.append(_check_retention(result))
        if "darcy_max_mismatch" in checks:
            out.append(_check_darcy(result, params, checks))
        if "smalltime_ratio_max" in checks:
            out.append(_check_smalltime(result, params, checks))
        if "weighted_variation_max" in checks:
            out.append(_check_weighted_variation(result, params, checks))
        if "mass_shift_tol" in checks:
            out.append(_check_mass_shift(result, cfg, run_dir, checks))
        if "transform_max_rel" in checks:
            out.append(_check_transform(result, run_dir, checks))
        if "convergence_ratio_range" in checks:
            out.append(_check_convergence(result, cfg, run_dir, checks))

    return ValidationReport(checks=tuple(out))
