"""Residuals of catalog solutions under their governing equations.

Closed-form families get closed-form residuals: the same cancellations that
make them (super)solutions hold term by term, so evaluating the analytic
expression costs only roundoff (~1e-16 relative), far below the tolerances
the checks use.  Central finite differences at that accuracy would not work:
a second difference with step h floors out near eps/h^2.

The linear heat kernels have no such algebraic structure to exploit (the n=2
one is a quadrature), so their residual uses fourth-order central stencils
with steps chosen above the evaluation noise floor.
"""

import math

import numpy as np

from .params import ModelParams
from . import catalog


# ---------------------------------------------------------------------------
# Finite-difference stencils (fourth order)
# ---------------------------------------------------------------------------


def fd_first(f, x, h: float):
    """(f(x-2h) - 8 f(x-h) + 8 f(x+h) - f(x+2h)) / (12 h)."""
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12.0 * h)


def fd_second(f, x, h: float):
    """(-f(x-2h) + 16 f(x-h) - 30 f(x) + 16 f(x+h) - f(x+2h)) / (12 h^2)."""
    return (
        -f(x - 2 * h)
        + 16 * f(x - h)
        - 30 * f(x)
        + 16 * f(x + h)
        - f(x + 2 * h)
    ) / (12.0 * h * h)


# ---------------------------------------------------------------------------
# Linear flow on hyperbolic space
# ---------------------------------------------------------------------------


def heat_kernel_residual(r, t, n: int, h_r: float | None = None) -> np.ndarray:
    """d_t u - (u'' + (n-1) coth(r) u') for the n-dimensional kernel.

    h_r defaults to 1e-3 for the closed-form n = 3 kernel and 1e-2 for the
    quadrature-valued n = 2 kernel, whose ~1e-11 relative evaluation noise
    would dominate a smaller stencil.  Needs r > 2 h_r.
    """
    if h_r is None:
        h_r = 1e-3 if n == 3 else 1e-2
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r <= 2 * h_r):
        raise ValueError("sample radii must exceed the stencil width")
    out = np.empty_like(r)
    for i, ri in enumerate(r):
        u_of_r = lambda x: catalog.heat_kernel(x, t, n)
        u_of_t = lambda s: catalog.heat_kernel(ri, s, n)
        h_t = 1e-3 * t if n == 3 else 1e-2 * t
        du_dt = fd_first(u_of_t, t, h_t)
        d2u = fd_second(u_of_r, ri, h_r)
        du = fd_first(u_of_r, ri, h_r)
        out[i] = du_dt - d2u - (n - 1) / math.tanh(ri) * du
    return out


# ---------------------------------------------------------------------------
# Half-space travelling wave (exact; residual is pure roundoff)
# ---------------------------------------------------------------------------


def gtw_residual(y, t, params: ModelParams, c: float = 1.0):
    """d_t u - (y^2 (u^m)_yy - (n-2) y (u^m)_y), analytic on the support."""
    if params.is_plap:
        raise ValueError("the half-space wave is defined for the porous-medium flux")
    m, n = params.m, params.n
    a, gam = params.slope_a, params.gamma
    al = 1.0 / (m - 1.0)
    mal = m * al
    y = np.asarray(y, dtype=float)
    t = np.asarray(t, dtype=float)
    omega = np.log(c) + gam * np.log(t) + np.log(y)
    if np.any(omega <= 0):
        raise ValueError("residual sampled outside the support")
    u_t = al * a**al * t ** (-al - 1.0) * omega ** (al - 1.0) * (gam - omega)
    # y^2 V_yy and y V_y collapse to omega-derivatives since d omega / dy = 1/y
    y2_v_yy = a**mal * t ** (-mal) * mal * omega ** (mal - 2.0) * ((mal - 1.0) - omega)
    y_v_y = a**mal * t ** (-mal) * mal * omega ** (mal - 1.0)
    out = u_t - y2_v_yy + (n - 2) * y_v_y
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Radial log-cone (supersolution for r > 0)
# ---------------------------------------------------------------------------


def log_cone_residual(r, t, params: ModelParams, b: float = 0.0):
    """d_t u - ((u^m)'' + (n-1) coth(r) (u^m)'), analytic on the support.

    Equals (n-1)(coth r - 1) * m/(m-1) a^{m/(m-1)} t^{-m/(m-1)} xi^{1/(m-1)},
    which is nonnegative: the cone is exact for coth == 1 and coth r > 1.
    """
    if params.is_plap:
        raise ValueError("use plap_cone_residual for the p-flux")
    m, n = params.m, params.n
    a, gam = params.slope_a, params.gamma
    al = 1.0 / (m - 1.0)
    mal = m * al
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("the supersolution property holds away from the origin")
    t = np.asarray(t, dtype=float)
    xi = gam * np.log(t) + b - r
    if np.any(xi <= 0):
        raise ValueError("residual sampled outside the support")
    u_t = al * a**al * t ** (-al - 1.0) * xi ** (al - 1.0) * (gam - xi)
    v_r = -mal * a**mal * t ** (-mal) * xi ** (mal - 1.0)
    v_rr = mal * (mal - 1.0) * a**mal * t ** (-mal) * xi ** (mal - 2.0)
    out = u_t - v_rr - (n - 1) / np.tanh(r) * v_r
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# p-flux cone
# ---------------------------------------------------------------------------


def plap_profile_residual(xi, params: ModelParams):
    """Self-similar profile equation residual for F(xi) = a xi^{(p-1)/(p-2)}:

        (|F'|^{p-2} F')' - (n-1) |F'|^{p-2} F' + F/(p-2) - gamma F'.

    Vanishes identically; evaluated analytically so only roundoff remains.
    """
    if not params.is_plap:
        raise ValueError("needs p-flux parameters")
    p, n = params.p, params.n
    a, gam = params.slope_a, params.gamma
    q = (p - 1.0) / (p - 2.0)
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise ValueError("profile sampled outside its positivity set")
    flux = (a * q) ** (p - 1.0) * xi**q
    flux_prime = (a * q) ** (p - 1.0) * q * xi ** (q - 1.0)
    F = a * xi**q
    F_prime = a * q * xi ** (q - 1.0)
    out = flux_prime - (n - 1) * flux + F / (p - 2.0) - gam * F_prime
    return float(out) if out.ndim == 0 else out


def plap_cone_residual(r, t, params: ModelParams, b: float = 0.0):
    """d_t u - ((psi(u'))' + (n-1) coth(r) psi(u')), psi(g) = |g|^{p-2} g.

    Like the porous-medium cone this reduces to (n-1)(coth r - 1) times a
    positive flux, hence is nonnegative on the support for r > 0.
    """
    if not params.is_plap:
        raise ValueError("needs p-flux parameters")
    p, n = params.p, params.n
    a, gam = params.slope_a, params.gamma
    q = (p - 1.0) / (p - 2.0)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("the supersolution property holds away from the origin")
    t = np.asarray(t, dtype=float)
    xi = gam * np.log(t) + b - r
    if np.any(xi <= 0):
        raise ValueError("residual sampled outside the support")
    # u = a t^{-1/(p-2)} xi^q and -1/(p-2) - 1 = -q, so d_t u carries t^{-q}
    tq = t ** (-q)
    u_t = a * tq * xi ** (q - 1.0) * (q * gam - xi / (p - 2.0))
    psi = -((a * q) ** (p - 1.0)) * tq * xi**q
    psi_prime = (a * q) ** (p - 1.0) * tq * q * xi ** (q - 1.0)
    out = u_t - psi_prime - (n - 1) / np.tanh(r) * psi
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Generic finite-difference residuals (cross-checks of the analytic routes)
# ---------------------------------------------------------------------------


def radial_pde_residual_fd(
    u_fn, r, t, n: int, m: float, h_r: float = 1e-3, h_t_rel: float = 1e-3
) -> np.ndarray:
    """d_t u - ((u^m)'' + (n-1) coth(r) (u^m)') by fourth-order stencils.

    Independent route for validating the analytic residual formulas; accuracy
    is limited by the stencil, so compare against loose (~1e-8) bounds only.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    out = np.empty_like(r)
    v_of = lambda x, s: np.asarray(u_fn(x, s), dtype=float) ** m
    for i, ri in enumerate(r):
        du_dt = fd_first(lambda s: u_fn(ri, s), t, h_t_rel * t)
        d2v = fd_second(lambda x: v_of(x, t), ri, h_r)
        dv = fd_first(lambda x: v_of(x, t), ri, h_r)
        out[i] = du_dt - d2v - (n - 1) / math.tanh(ri) * dv
    return out


def weighted_pde_residual_fd(
    u_fn, s, t, n: int, m: float, h_s_rel: float = 1e-3, h_t_rel: float = 1e-3
) -> np.ndarray:
    """s^{-2} d_t u - ((u^m)'' + (n-1)/s (u^m)') for the exact-density model."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    out = np.empty_like(s)
    v_of = lambda x, tt: np.asarray(u_fn(x, tt), dtype=float) ** m
    for i, si in enumerate(s):
        h_s = h_s_rel * si
        du_dt = fd_first(lambda tt: u_fn(si, tt), t, h_t_rel * t)
        d2v = fd_second(lambda x: v_of(x, t), si, h_s)
        dv = fd_first(lambda x: v_of(x, t), si, h_s)
        out[i] = du_dt / (si * si) - d2v - (n - 1) / si * dv
    return out
