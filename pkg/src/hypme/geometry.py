"""Radial geometry of hyperbolic space and its weighted-Euclidean form.

On the n-dimensional hyperbolic space of curvature -1 the radial Laplacian is

    L u = u'' + (n-1) coth(r) u' = (sinh r)^{1-n} ((sinh r)^{n-1} u')',

with volume element (sinh r)^{n-1} dr dw.  For n >= 3 the substitution

    ds / s^{n-1} = dr / (sinh r)^{n-1}

maps (0, inf) onto itself and turns the radial flow into a Euclidean radial
flow against the density weight

    rho(s) = ((sinh r) / s)^{2(n-1)},    mu(s) = ((sinh r) / s)^{2(n-2)},

where mu is the angular distortion (identically 1 for n = 2, where the map
degenerates and is not offered).  Key behaviour encoded here:

    s(r) = [(n-2) * I(r)]^{-1/(n-2)},   I(r) = int_r^inf (sinh p)^{1-n} dp,
    s ~ r                 as r -> 0,
    s ~ c(n) e^{(n-1) r/(n-2)}  as r -> inf,
    rho -> 1 as s -> 0,   s^2 rho(s) -> const as s -> inf.

I(r) is evaluated by composite Gauss-Legendre quadrature in log radius up to
a split point and by an exact exponential series beyond it.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator

# Above this radius the inverse-volume integral is summed analytically;
# below it quadrature in log radius is used.
_SPLIT = 10.0
_TAIL_TERMS = 8

# Tabulation window for CoordinateMap (log-spaced).  Node spacing in log r
# is ~1.6e-3, putting the spline interpolation error near 1e-11 relative;
# below the window s = r holds to the same order as r_min itself.
_TABLE_R_MIN = 1e-7
_TABLE_R_MAX = 40.0
_TABLE_SIZE = 12288


@dataclass(frozen=True)
class SpaceParams:
    """Dimension of the ambient hyperbolic space.  Curvature is pinned to -1."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"dimension n must be an integer >= 2, got {self.n!r}")

    @property
    def curvature(self) -> float:
        return -1.0


def sphere_area(n: int) -> float:
    """Surface area of the unit (n-1)-sphere: 2 pi^(n/2) / Gamma(n/2)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def volume_factor(r, n: int):
    """Radial volume element factor (sinh r)^(n-1).

    Strictly increasing in r for r > 0; rejects negative radii.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be nonnegative")
    out = np.sinh(r) ** (n - 1)
    return out if out.ndim else float(out)


def _require_mappable(n: int):
    if not isinstance(n, (int, np.integer)):
        raise ValueError("dimension n must be an integer")
    if n == 2:
        raise ValueError("the r<->s change of variables degenerates for n = 2")
    if n < 2:
        raise ValueError("n must be >= 2")


def _tail_integral(R: float, n: int) -> float:
    """int_R^inf (sinh p)^{1-n} dp for R >= _SPLIT, by the expansion

    (sinh p)^{1-n} = 2^{n-1} e^{(1-n)p} sum_k C(n-2+k, k) e^{-2kp}.

    Truncation error ~ e^{-2(T+1)R} relative; negligible at R >= 10.
    """
    total = 0.0
    for k in range(_TAIL_TERMS):
        coeff = math.comb(n - 2 + k, k)
        rate = n - 1 + 2 * k
        total += coeff * math.exp(-rate * R) / rate
    return 2.0 ** (n - 1) * total


def _inverse_volume_integral(r: float, n: int) -> float:
    """I(r) = int_r^inf (sinh p)^{1-n} dp.

    Composite 10-point Gauss-Legendre in x = log p up to the split point
    (the integrand spans ~(n-1) decades per unit of x near zero, so short
    log-space segments keep each panel tame; adaptive quadrature on the
    raw variable loses the integral entirely for n >= 4 at small r), then
    the exact exponential series for the rest.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    if r >= _SPLIT:
        return _tail_integral(r, n)
    x_lo, x_hi = math.log(r), math.log(_SPLIT)
    segments = max(8, int(math.ceil((x_hi - x_lo) / 0.05)))
    gl_x, gl_w = np.polynomial.legendre.leggauss(10)
    edges = np.linspace(x_lo, x_hi, segments + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    p = np.exp(mid[:, None] + half[:, None] * gl_x[None, :])
    vals = np.sinh(p) ** (1 - n) * p
    val = float(((vals * gl_w[None, :]).sum(axis=1) * half).sum())
    return val + _tail_integral(_SPLIT, n)


def _s_from_integral(integral: float, n: int) -> float:
    return ((n - 2) * integral) ** (-1.0 / (n - 2))


@lru_cache(maxsize=None)
def asymptote_constant(n: int) -> float:
    """c(n) in s(r) ~ c(n) e^{(n-1) r / (n-2)}:
    c(n) = ((n-1)/(n-2))^{1/(n-2)} * 2^{-(n-1)/(n-2)}."""
    _require_mappable(n)
    return ((n - 1) / (n - 2)) ** (1.0 / (n - 2)) * 2.0 ** (-(n - 1) / (n - 2))


def r_to_s(r, n: int):
    """Map hyperbolic radius to the Euclidean radial coordinate,

        s(r) = [(n-2) int_r^inf (sinh p)^{1-n} dp]^{-1/(n-2)},  n >= 3.

    Strictly increasing, s(r) > r, s/r -> 1 as r -> 0.  Scalar or array.
    """
    _require_mappable(n)
    rr = np.asarray(r, dtype=float)
    if np.any(rr <= 0):
        raise ValueError("radius must be positive")
    flat = np.atleast_1d(rr)
    out = np.empty_like(flat)
    for i, ri in enumerate(flat):
        out[i] = _s_from_integral(_inverse_volume_integral(ri, n), n)
    return float(out[0]) if rr.ndim == 0 else out.reshape(rr.shape)


def _dlogs_dr(r: float, s: float, n: int) -> float:
    # d(log s)/dr = s^{n-2} / (sinh r)^{n-1}
    return s ** (n - 2) / math.sinh(r) ** (n - 1)


def s_to_r(s, n: int, rel_tol: float = 1e-13):
    """Invert the coordinate map: the r with |r_to_s(r) - s|/s below tolerance.

    Safeguarded Newton on log s(r) with the analytic derivative
    d(log s)/dr = s^{n-2}/(sinh r)^{n-1}.  Scalar or array.
    """
    _require_mappable(n)
    ss = np.asarray(s, dtype=float)
    if np.any(ss <= 0):
        raise ValueError("s must be positive")
    flat = np.atleast_1d(ss)
    out = np.empty_like(flat)
    for i, si in enumerate(flat):
        out[i] = _invert_scalar(si, n, rel_tol)
    return float(out[0]) if ss.ndim == 0 else out.reshape(ss.shape)


def _invert_scalar(s: float, n: int, rel_tol: float) -> float:
    target = math.log(s)
    # Initial guess: r ~ s near zero, the exponential asymptote at infinity.
    if s < 1e-3:
        r = s
    else:
        r = max((n - 2) / (n - 1) * math.log(s / asymptote_constant(n)), 0.5 * s / (1 + s))
        r = min(r, s)  # s(r) > r, so the root lies below s
        r = max(r, 1e-14)
    # Bracket the root: g(r) = log s(r) - log s is increasing.
    lo, hi = r, r
    g = math.log(r_to_s(r, n)) - target
    tries = 0
    while g > 0:
        hi = lo
        lo *= 0.5
        g = math.log(r_to_s(lo, n)) - target
        tries += 1
        if tries > 200:
            raise RuntimeError("failed to bracket the inverse coordinate map")
    if lo == hi:
        g_hi = g
        while g_hi < 0:
            lo = hi
            hi = min(2.0 * hi, hi + 10.0)
            g_hi = math.log(r_to_s(hi, n)) - target
            tries += 1
            if tries > 200:
                raise RuntimeError("failed to bracket the inverse coordinate map")
    r = 0.5 * (lo + hi)
    for _ in range(100):
        sval = r_to_s(r, n)
        g = math.log(sval) - target
        if abs(g) <= rel_tol:
            return r
        if g > 0:
            hi = r
        else:
            lo = r
        step = g / _dlogs_dr(r, sval, n)
        r_new = r - step
        if not (lo < r_new < hi):
            r_new = 0.5 * (lo + hi)
        r = r_new
    return r


def weight_rho(s, n: int):
    """Density weight rho(s) = ((sinh r)/s)^{2(n-1)} with r = s_to_r(s).

    Positive and bounded; rho -> 1 as s -> 0 and s^2 rho(s) tends to a
    dimension constant at infinity (see weight_tail_constant).
    """
    _require_mappable(n)
    ss = np.asarray(s, dtype=float)
    if np.any(ss < 0):
        raise ValueError("s must be nonnegative")
    flat = np.atleast_1d(ss).astype(float)
    out = np.empty_like(flat)
    for i, si in enumerate(flat):
        if si < 1e-8:
            out[i] = 1.0
        else:
            ri = s_to_r(si, n)
            out[i] = (math.sinh(ri) / si) ** (2 * (n - 1))
    return float(out[0]) if ss.ndim == 0 else out.reshape(ss.shape)


def weight_mu(s, n: int):
    """Angular distortion mu(s) = ((sinh r)/s)^{2(n-2)}; identically 1 for n = 2."""
    if n == 2:
        ss = np.asarray(s, dtype=float)
        out = np.ones_like(ss)
        return float(out) if ss.ndim == 0 else out
    _require_mappable(n)
    ss = np.asarray(s, dtype=float)
    if np.any(ss < 0):
        raise ValueError("s must be nonnegative")
    flat = np.atleast_1d(ss).astype(float)
    out = np.empty_like(flat)
    for i, si in enumerate(flat):
        if si < 1e-8:
            out[i] = 1.0
        else:
            ri = s_to_r(si, n)
            out[i] = (math.sinh(ri) / si) ** (2 * (n - 2))
    return float(out[0]) if ss.ndim == 0 else out.reshape(ss.shape)


@lru_cache(maxsize=None)
def weight_tail_constant(n: int) -> float:
    """lim_{s->inf} s^2 rho(s), computed numerically from the map."""
    _require_mappable(n)
    s_probe = 1e8
    r = s_to_r(s_probe, n)
    return s_probe**2 * (math.sinh(r) / s_probe) ** (2 * (n - 1))


@dataclass
class CoordinateMap:
    """Tabulated r <-> s map for one dimension, for fast vectorised use.

    The table holds log-spaced (r_i, s_i) pairs; evaluation interpolates
    log s against log r with a cubic spline (node values from composite
    Gauss-Legendre quadrature of the defining integral, so both the nodes
    and the interpolant sit well below 1e-9 relative error).  Inversion
    solves the same interpolant by Newton with a monotone-interpolant seed,
    so a round trip reproduces r to root-finder accuracy.  Outside the table
    the two analytic asymptotes take over (s = r below, the exponential
    series above).  Instances are immutable after construction and safe to
    share across threads.
    """

    n: int
    r_nodes: np.ndarray
    s_nodes: np.ndarray
    _fwd: CubicSpline = field(repr=False)
    _fwd_deriv: CubicSpline = field(repr=False)
    _inv_guess: PchipInterpolator = field(repr=False)

    @classmethod
    def build(
        cls,
        n: int,
        r_min: float = _TABLE_R_MIN,
        r_max: float = _TABLE_R_MAX,
        num: int = _TABLE_SIZE,
    ) -> "CoordinateMap":
        _require_mappable(n)
        r_nodes = np.geomspace(r_min, r_max, num)
        # Composite Gauss-Legendre in x = log p (the integrand is smooth and
        # slowly varying on that scale), vectorised over all segments, then a
        # reverse cumulative sum against the exact series tail.
        x = np.log(r_nodes)
        gl_x, gl_w = np.polynomial.legendre.leggauss(10)
        mid = 0.5 * (x[1:] + x[:-1])
        half = 0.5 * np.diff(x)
        p = np.exp(mid[:, None] + half[:, None] * gl_x[None, :])
        vals = np.sinh(p) ** (1 - n) * p
        segs = (vals * gl_w[None, :]).sum(axis=1) * half
        tails = np.empty(num)
        tails[-1] = _tail_integral(r_nodes[-1], n)
        tails[:-1] = tails[-1] + segs[::-1].cumsum()[::-1]
        s_nodes = ((n - 2) * tails) ** (-1.0 / (n - 2))
        if np.any(np.diff(s_nodes) <= 0):
            raise RuntimeError("tabulated coordinate map is not strictly increasing")
        fwd = CubicSpline(np.log(r_nodes), np.log(s_nodes), extrapolate=False)
        fwd_deriv = fwd.derivative()
        if np.any(fwd_deriv(np.log(r_nodes)) <= 0):
            raise RuntimeError("coordinate map interpolant lost monotonicity")
        return cls(
            n=n,
            r_nodes=r_nodes,
            s_nodes=s_nodes,
            _fwd=fwd,
            _fwd_deriv=fwd_deriv,
            _inv_guess=PchipInterpolator(np.log(s_nodes), np.log(r_nodes), extrapolate=False),
        )

    # -- forward -------------------------------------------------------

    def r_to_s(self, r):
        rr = np.asarray(r, dtype=float)
        if np.any(rr <= 0):
            raise ValueError("radius must be positive")
        flat = np.atleast_1d(rr).astype(float)
        out = np.empty_like(flat)
        below = flat < self.r_nodes[0]
        above = flat > self.r_nodes[-1]
        inside = ~(below | above)
        out[below] = flat[below]
        if np.any(inside):
            out[inside] = np.exp(self._fwd(np.log(flat[inside])))
        if np.any(above):
            out[above] = [
                _s_from_integral(_tail_integral(ri, self.n), self.n) for ri in flat[above]
            ]
        return float(out[0]) if rr.ndim == 0 else out.reshape(rr.shape)

    # -- inverse -------------------------------------------------------

    def s_to_r(self, s, tol: float = 1e-13):
        ss = np.asarray(s, dtype=float)
        if np.any(ss <= 0):
            raise ValueError("s must be positive")
        flat = np.atleast_1d(ss).astype(float)
        out = np.empty_like(flat)
        below = flat < self.s_nodes[0]
        above = flat > self.s_nodes[-1]
        inside = ~(below | above)
        out[below] = flat[below]
        if np.any(inside):
            target = np.log(flat[inside])
            x = self._inv_guess(target)  # log r seed
            lo = math.log(self.r_nodes[0])
            hi = math.log(self.r_nodes[-1])
            for _ in range(60):
                err = self._fwd(x) - target
                if np.all(np.abs(err) <= tol):
                    break
                x = np.clip(x - err / self._fwd_deriv(x), lo, hi)
            out[inside] = np.exp(x)
        if np.any(above):
            out[above] = [s_to_r(si, self.n) for si in flat[above]]
        return float(out[0]) if ss.ndim == 0 else out.reshape(ss.shape)

    # -- weights -------------------------------------------------------

    def rho(self, s):
        ss = np.asarray(s, dtype=float)
        flat = np.atleast_1d(ss).astype(float)
        out = np.ones_like(flat)
        big = flat >= 1e-8
        if np.any(big):
            r = np.atleast_1d(self.s_to_r(flat[big]))
            out[big] = (np.sinh(r) / flat[big]) ** (2 * (self.n - 1))
        return float(out[0]) if ss.ndim == 0 else out.reshape(ss.shape)

    def mu(self, s):
        ss = np.asarray(s, dtype=float)
        flat = np.atleast_1d(ss).astype(float)
        out = np.ones_like(flat)
        big = flat >= 1e-8
        if np.any(big):
            r = np.atleast_1d(self.s_to_r(flat[big]))
            out[big] = (np.sinh(r) / flat[big]) ** (2 * (self.n - 2))
        return float(out[0]) if ss.ndim == 0 else out.reshape(ss.shape)


@lru_cache(maxsize=8)
def get_map(n: int) -> CoordinateMap:
    """Shared per-dimension CoordinateMap (read-only after construction)."""
    return CoordinateMap.build(n)


def transform_table(n: int, r_values) -> np.ndarray:
    """Columns (r, s, rho, mu) of the change of variables at the given radii."""
    r = np.asarray(r_values, dtype=float)
    s = r_to_s(r, n)
    rho = weight_rho(s, n)
    mu = weight_mu(s, n)
    return np.column_stack([r, s, rho, mu])
