"""Measurements on finished runs: growth fits, profiles, decay laws.

Everything here consumes RunResult objects (traces sampled at every accepted
step, snapshots at checkpoints) and produces plain numbers, so the checks
module and the tests can state their tolerances directly.  Conventions:

  * Fronts are the free-boundary positions recorded in the trace.
  * Log-growth fits regress front against log t over a time window and
    require at least eight trace points, refusing to produce a slope from
    less evidence.
  * Snapshot-to-snapshot comparisons align cells by index; grid extensions
    only append cells, so a common prefix always refers to identical cells.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from . import catalog
from .geometry import get_map, weight_tail_constant
from .params import ModelParams
from .solver import RunResult

_MIN_FIT_POINTS = 8


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    max_deviation: float
    points: int


def _window(trace_t, t_min: float, t_max: float) -> np.ndarray:
    if not 0 < t_min < t_max:
        raise ValueError("need 0 < t_min < t_max")
    return (trace_t >= t_min) & (trace_t <= t_max)


def fit_log_growth(trace, t_min: float, t_max: float) -> FitResult:
    """Least-squares front = slope * log t + intercept over the window."""
    mask = _window(trace.t, t_min, t_max)
    if int(mask.sum()) < _MIN_FIT_POINTS:
        raise ValueError(
            f"only {int(mask.sum())} trace points in [{t_min:g}, {t_max:g}]; "
            f"need {_MIN_FIT_POINTS}"
        )
    x = np.log(trace.t[mask])
    y = trace.front[mask]
    slope, intercept = np.polyfit(x, y, 1)
    dev = float(np.max(np.abs(slope * x + intercept - y)))
    return FitResult(float(slope), float(intercept), dev, int(mask.sum()))


def fit_power_growth(trace, t_min: float, t_max: float) -> FitResult:
    """Least-squares log front = slope * log t + intercept (power laws)."""
    mask = _window(trace.t, t_min, t_max)
    if int(mask.sum()) < _MIN_FIT_POINTS:
        raise ValueError(
            f"only {int(mask.sum())} trace points in [{t_min:g}, {t_max:g}]; "
            f"need {_MIN_FIT_POINTS}"
        )
    x = np.log(trace.t[mask])
    y = np.log(trace.front[mask])
    slope, intercept = np.polyfit(x, y, 1)
    dev = float(np.max(np.abs(slope * x + intercept - y)))
    return FitResult(float(slope), float(intercept), dev, int(mask.sum()))


# ---------------------------------------------------------------------------
# Conical pressure profile
# ---------------------------------------------------------------------------


def profile_error(
    snapshot,
    params: ModelParams,
    b_ref: float,
    depth_range=(-1.0, 2.0),
    samples: int = 400,
) -> float:
    """Sup distance between the rescaled profile and the limiting cone.

    Measures max over xi in depth_range of

        | t * u^{m-1}(R_ref - xi_signed) - a * max(xi, 0) |

    where xi is depth inside the reference front R_ref = gamma log t + b_ref
    (negative xi probes beyond the front).  u^{m-1} is interpolated
    monotonically in r; sample radii are clipped away from the origin.
    """
    params._require_pme("this analysis")
    t = snapshot.t
    a, gamma = params.slope_a, params.gamma
    # flat zero tail beyond the support -> zero slopes; Pchip handles them
    # but its harmonic-mean weights emit a spurious overflow warning
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        interp = PchipInterpolator(snapshot.x, snapshot.u ** (params.m - 1.0))
    r_front = gamma * math.log(t) + b_ref
    xi = np.linspace(depth_range[0], depth_range[1], samples)
    r = r_front - xi
    lo, hi = snapshot.x[0], snapshot.x[-1]
    keep = (r >= lo) & (r <= hi)
    if not np.any(keep):
        raise ValueError("reference front lies outside the snapshot grid")
    scaled = t * np.asarray(interp(r[keep]))
    cone = a * np.maximum(xi[keep], 0.0)
    return float(np.max(np.abs(scaled - cone)))


def profile_convergence(
    result: RunResult, params: ModelParams, t_early: float, t_late: float
) -> dict:
    """Profile error at two checkpoint times against one shared cone.

    The cone intercept is read off the late-time front (front minus
    gamma log t), so the comparison asks whether the early profile is
    farther from the eventual cone than the late one.
    """
    snap_early = result.snapshot_at(t_early)
    snap_late = result.snapshot_at(t_late)
    idx = int(np.searchsorted(result.trace.t, t_late))
    idx = min(idx, result.trace.t.size - 1)
    b_ref = float(result.trace.front[idx]) - params.gamma * math.log(t_late)
    return {
        "b_ref": b_ref,
        "error_early": profile_error(snap_early, params, b_ref),
        "error_late": profile_error(snap_late, params, b_ref),
    }


# ---------------------------------------------------------------------------
# Decay laws and monotonicity estimates
# ---------------------------------------------------------------------------


def sup_norm_window(trace, params: ModelParams, t_min: float, t_max: float) -> dict:
    """Bracket q(t) = sup(u)^{m-1} t / log t over the window; the decay law
    sup u ~ (log t / t)^{1/(m-1)} holds iff q stays within fixed bounds."""
    params._require_pme("this analysis")
    mask = _window(trace.t, t_min, t_max)
    if not np.any(mask):
        raise ValueError("empty time window")
    q = trace.sup[mask] ** (params.m - 1.0) * trace.t[mask] / np.log(trace.t[mask])
    return {"q_min": float(q.min()), "q_max": float(q.max()),
            "ratio": float(q.max() / q.min())}


def _aligned_pairs(result: RunResult):
    snaps = result.snapshots
    for first, second in zip(snaps[:-1], snaps[1:]):
        n = min(first.u.size, second.u.size)
        yield first, second, n


def time_monotonicity_margin(result: RunResult, params: ModelParams) -> float:
    """Worst cell value of  (u2 - u1)/(t2 - t1) + alpha u1 / t1  over all
    consecutive snapshot pairs, with alpha = 1/(m-1) (resp. 1/(p-2)): the
    fundamental one-sided time-derivative bound, nonnegative in the
    continuum, allowed a discretisation slack."""
    worst = math.inf
    alpha = params.alpha
    for first, second, n in _aligned_pairs(result):
        rate = (second.u[:n] - first.u[:n]) / (second.t - first.t)
        margin = rate + alpha * first.u[:n] / first.t
        worst = min(worst, float(margin.min()))
    return worst


def positivity_retained(result: RunResult) -> bool:
    """True when every cell positive in a snapshot stays positive later."""
    for first, second, n in _aligned_pairs(result):
        pos = first.u[:n] > 0
        if not np.all(second.u[:n][pos] > 0):
            return False
    return True


# ---------------------------------------------------------------------------
# Front kinematics
# ---------------------------------------------------------------------------


def front_speed_vs_pressure_gradient(
    result: RunResult,
    params: ModelParams,
    t_eval: float,
    fit_points: int = 15,
    band=(0.05, 0.6),
) -> dict:
    """Two independent routes to the front speed at one checkpoint.

    Kinematic: slope of front vs log t over fit_points trace samples around
    t_eval, divided by t_eval.  Dynamic: the front moves at the inward
    pressure slope, estimated by a linear fit of m/(m-1) u^{m-1} over the
    band of radii [front - band[1], front - band[0]].  Both are reported
    normalised by gamma / t, their common limit.
    """
    params._require_pme("this analysis")
    trace = result.trace
    snap = result.snapshot_at(t_eval)
    i = int(np.argmin(np.abs(trace.t - t_eval)))
    lo = max(0, i - fit_points // 2)
    hi = min(trace.t.size, lo + fit_points)
    lo = max(0, hi - fit_points)
    if hi - lo < 3:
        raise ValueError("not enough trace points around t_eval")
    slope = np.polyfit(np.log(trace.t[lo:hi]), trace.front[lo:hi], 1)[0]
    speed_kinematic = float(slope) / t_eval

    front = float(trace.front[i])
    r = snap.x
    sel = (r >= front - band[1]) & (r <= front - band[0])
    if int(sel.sum()) < 3:
        raise ValueError("pressure band holds fewer than 3 cells")
    p = catalog.pressure(snap.u[sel], params.m)
    grad = np.polyfit(r[sel], p, 1)[0]
    speed_dynamic = -float(grad)

    scale = params.gamma / t_eval
    return {
        "speed_kinematic": speed_kinematic,
        "speed_dynamic": speed_dynamic,
        "kinematic_over_gamma": speed_kinematic / scale,
        "dynamic_over_gamma": speed_dynamic / scale,
        "relative_mismatch": abs(speed_kinematic - speed_dynamic)
        / max(abs(speed_kinematic), abs(speed_dynamic)),
    }


# ---------------------------------------------------------------------------
# Reference-solution distances
# ---------------------------------------------------------------------------


def euclidean_reference_distance(
    result: RunResult, params: ModelParams, t: float
) -> float:
    """L1 distance (n-dimensional, run's own measure) between the snapshot
    at t and the flat-space source solution of equal mass.  Small while the
    support is small compared to the curvature scale, growing after."""
    snap = result.snapshot_at(t)
    reference = catalog.barenblatt(snap.x, t, params)
    prob = result.problem
    n = snap.u.size
    meas = prob.cell_measure()[:n]
    return prob.omega * float(np.dot(meas, np.abs(snap.u - reference)))


def transform_difference(
    result_radial: RunResult, result_weighted: RunResult, t: float
) -> dict:
    """Pull the weighted-model snapshot back through the coordinate map and
    measure the relative L1 gap against the radial-model snapshot at equal
    time.  The two runs discretise the same flow in different variables, so
    the gap bounds the combined discretisation error of both routes."""
    snap_r = result_radial.snapshot_at(t)
    snap_w = result_weighted.snapshot_at(t)
    params = result_radial.problem.params
    cmap = get_map(params.n)
    s_of_r = cmap.r_to_s(snap_r.x)
    pulled = np.interp(s_of_r, snap_w.x, snap_w.u)
    prob = result_radial.problem
    meas = prob.cell_measure()[: snap_r.u.size]
    l1 = prob.omega * float(np.dot(meas, np.abs(snap_r.u - pulled)))
    mass = prob.omega * float(np.dot(meas, snap_r.u))
    return {"l1": l1, "l1_relative": l1 / mass, "mass": mass}


def weighted_front_scaling(
    result: RunResult, params: ModelParams, t_min: float, t_max: float
) -> dict:
    """Front of the weighted model against the singular-source prediction.

    The density behaves like c1/s^2 far out, so in rescaled time t/c1 the
    flow matches the exactly-singular model, whose source solution has front
    A (t/c1)^beta with A fixed by the conserved 1/s^2-weighted integral:

        A = (E / k)^{1/(n-2)},  E = (M / omega) / c1,
        k = the unit-front solution's integral at t = 1.

    Reports the variation of front * (t/c1)^{-beta} over the window and the
    measured amplitude against the predicted one.
    """
    params._require_pme("this analysis")
    if params.n < 3:
        raise ValueError("the weighted model needs n >= 3")
    trace = result.trace
    mask = _window(trace.t, t_min, t_max)
    if int(mask.sum()) < _MIN_FIT_POINTS:
        raise ValueError("too few trace points in the window")
    c1 = weight_tail_constant(params.n)
    beta = params.beta_weighted
    scaled = trace.front[mask] * (trace.t[mask] / c1) ** (-beta)
    energy = (params.M / result.problem.omega) / c1
    k = catalog.singular_barenblatt_energy(params, A=1.0, t=1.0)
    amplitude_predicted = (energy / k) ** (1.0 / (params.n - 2))
    measured = float(np.exp(np.mean(np.log(scaled))))
    return {
        "scaled_min": float(scaled.min()),
        "scaled_max": float(scaled.max()),
        "variation": float(scaled.max() / scaled.min() - 1.0),
        "amplitude_measured": measured,
        "amplitude_predicted": amplitude_predicted,
        "amplitude_mismatch": abs(measured / amplitude_predicted - 1.0),
    }


def mass_shift_intercept(
    result_unit: RunResult,
    result_scaled: RunResult,
    params: ModelParams,
    mass_ratio: float,
    t_min: float,
    t_max: float,
) -> dict:
    """Front-intercept shift between two masses against the scaling law.

    Mass M changes the large-time front intercept by gamma (m-1) log M, a
    direct consequence of the scaling u -> M u(x, M^{m-1} t).  Each
    intercept is the window mean of front - gamma log t with the exact
    slope pinned; fitting the slope too would alias its finite-time error
    into the intercept difference.
    """
    params._require_pme("this analysis")

    def intercept(result: RunResult) -> float:
        mask = _window(result.trace.t, t_min, t_max)
        if int(mask.sum()) < _MIN_FIT_POINTS:
            raise ValueError(
                f"only {int(mask.sum())} trace points in [{t_min:g}, {t_max:g}]; "
                f"need {_MIN_FIT_POINTS}"
            )
        detrended = result.trace.front[mask] - params.gamma * np.log(
            result.trace.t[mask]
        )
        return float(detrended.mean())

    shift = intercept(result_scaled) - intercept(result_unit)
    predicted = params.gamma * (params.m - 1.0) * math.log(mass_ratio)
    return {
        "shift_measured": shift,
        "shift_predicted": predicted,
        "mismatch": abs(shift - predicted),
    }
