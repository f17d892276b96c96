"""Catalog of closed-form and approximate solutions used as references.

Contents, by the role they play:

  barenblatt           Euclidean self-similar source solution; the small-time
                       shape of every run started from concentrated data.
  heat_kernel          fundamental solutions of the linear heat flow on the
                       2- and 3-dimensional hyperbolic spaces (m = 1 limit).
  gtw                  exact travelling-wave solution in half-space
                       coordinates; flat fronts receding at gamma/t.
  log_cone             radial approximate solution with conical pressure
                       t * u^{m-1} = a (gamma log t + b - r)_+; an exact
                       supersolution of the radial flow away from the origin.
  plap_cone            the analogous cone for the p-flux.
  singular_barenblatt  explicit source solution of the weighted Euclidean
                       model with the borderline 1/|x|^2 density tail.
  subsolution_matched  C^1 lower barrier: conical outer part glued at r = 1
                       to a parabolic cap, with time-dependent matching.

All evaluators accept scalars or arrays and return nonnegative values that
vanish outside the support.  Mass calibrations are done by quadrature.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .geometry import sphere_area, volume_factor
from .params import ModelParams


def pressure(u, m: float):
    """Pressure variable p = m/(m-1) * u^(m-1); monotone in u, vanishes with it."""
    if not m > 1:
        raise ValueError("m must exceed 1")
    uu = np.asarray(u, dtype=float)
    if np.any(uu < 0):
        raise ValueError("u must be nonnegative")
    out = m / (m - 1.0) * uu ** (m - 1.0)
    return float(out) if out.ndim == 0 else out


def model_pressure(u, params: ModelParams):
    """Front-linear pressure for either flux family.

    Power flux uses the standard p = m/(m-1) u^(m-1); the gradient flux
    uses u^((p-2)/(p-1)), the variable in which its cone profile is linear.
    """
    if params.is_plap:
        uu = np.asarray(u, dtype=float)
        if np.any(uu < 0):
            raise ValueError("u must be nonnegative")
        out = uu ** ((params.p - 2.0) / (params.p - 1.0))
        return float(out) if out.ndim == 0 else out
    return pressure(u, params.m)


def _positive_part(x):
    return np.maximum(x, 0.0)


# ---------------------------------------------------------------------------
# Euclidean self-similar source solution
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _barenblatt_height(m: float, n: int, M: float) -> float:
    """Profile height C with F = (C - k xi^2)_+^{1/(m-1)} carrying mass M.

    mass(C) = omega * k^{-n/2} * I * C^{1/(m-1)+n/2} with
    I = int_0^1 (1-eta^2)^{1/(m-1)} eta^{n-1} d eta, so C follows from one
    quadrature and the self-similar scaling of the profile.
    """
    k = ModelParams(n=n, m=m).profile_k
    alpha = 1.0 / (m - 1.0)
    I, _ = quad(lambda e: (1.0 - e * e) ** alpha * e ** (n - 1), 0.0, 1.0,
                epsabs=0.0, epsrel=1e-12)
    scale = sphere_area(n) * k ** (-n / 2.0) * I
    return (M / scale) ** (1.0 / (alpha + n / 2.0))


def barenblatt(x, t, params: ModelParams):
    """Euclidean source solution U(x,t) = t^{-n b} (C - k (x t^{-b})^2)_+^{1/(m-1)}.

    b = beta_euclid; C is calibrated so the n-dimensional mass equals params.M.
    """
    if np.any(np.asarray(t) <= 0):
        raise ValueError("t must be positive")
    beta = params.beta_euclid
    k = params.profile_k
    C = _barenblatt_height(params.m, params.n, params.M)
    x = np.asarray(x, dtype=float)
    xi = x * np.asarray(t, dtype=float) ** (-beta)
    out = np.asarray(t, dtype=float) ** (-params.n * beta) * _positive_part(
        C - k * xi * xi
    ) ** (1.0 / (params.m - 1.0))
    return float(out) if out.ndim == 0 else out


def barenblatt_support_radius(t, params: ModelParams):
    """Edge of the support, (C/k)^(1/2) * t^beta_euclid."""
    C = _barenblatt_height(params.m, params.n, params.M)
    out = np.sqrt(C / params.profile_k) * np.asarray(t, dtype=float) ** params.beta_euclid
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Hyperbolic heat kernels (linear flow)
# ---------------------------------------------------------------------------


def heat_kernel(r, t, n: int):
    """Fundamental solution of the linear heat flow on hyperbolic space.

    n = 3: closed form (4 pi t)^{-3/2} (r / sinh r) e^{-t - r^2/(4t)}.
    n = 2: one radial integral,
        sqrt(2) (4 pi t)^{-3/2} e^{-t/4}
            int_r^inf s e^{-s^2/(4t)} (cosh s - cosh r)^{-1/2} ds,
    evaluated per point with the substitution s = r cosh w, which removes the
    inverse-square-root endpoint singularity.
    """
    if n == 3:
        if np.any(np.asarray(t) <= 0):
            raise ValueError("t must be positive")
        r = np.asarray(r, dtype=float)
        if np.any(r < 0):
            raise ValueError("radius must be nonnegative")
        ratio = np.where(r < 1e-12, 1.0, r / np.sinh(np.where(r < 1e-12, 1.0, r)))
        out = (4.0 * math.pi * t) ** (-1.5) * ratio * np.exp(-t - r * r / (4.0 * t))
        return float(out) if out.ndim == 0 else out
    if n == 2:
        rr = np.asarray(r, dtype=float)
        if np.any(rr < 0):
            raise ValueError("radius must be nonnegative")
        flat = np.atleast_1d(rr).astype(float)
        out = np.array([_heat_kernel_h2_scalar(ri, float(t)) for ri in flat])
        return float(out[0]) if rr.ndim == 0 else out.reshape(rr.shape)
    raise ValueError("heat kernel implemented for n in {2, 3}")


def _heat_kernel_h2_scalar(r: float, t: float) -> float:
    if t <= 0:
        raise ValueError("t must be positive")
    pref = math.sqrt(2.0) * (4.0 * math.pi * t) ** (-1.5) * math.exp(-t / 4.0)
    s_max = r + 40.0 * math.sqrt(t) + 5.0
    if r < 1e-12:
        # (cosh s - 1)^{1/2} = sqrt(2) sinh(s/2); integrand -> 2 at s = 0
        val, _ = quad(
            lambda s: s * math.exp(-s * s / (4.0 * t)) / (math.sqrt(2.0) * math.sinh(s / 2.0)),
            0.0,
            s_max,
            epsabs=0.0,
            epsrel=1e-11,
            limit=200,
        )
        return pref * val
    w_max = math.acosh(s_max / r)

    def integrand(w):
        s = r * math.cosh(w)
        # cosh s - cosh r = 2 sinh((s+r)/2) sinh((s-r)/2), with
        # (s-r)/2 = r sinh^2(w/2): exact, cancellation-free
        gap = 2.0 * math.sinh(0.5 * (s + r)) * math.sinh(r * math.sinh(0.5 * w) ** 2)
        return r * math.sinh(w) * s * math.exp(-s * s / (4.0 * t)) / math.sqrt(gap)

    val, _ = quad(integrand, 0.0, w_max, epsabs=0.0, epsrel=1e-11, limit=200)
    return pref * val


def heat_kernel_mass(t: float, n: int) -> float:
    """Total mass of the kernel by quadrature against the volume element."""
    if n == 3:
        integrand = lambda r: heat_kernel(r, t, 3) * math.sinh(r) ** 2
        upper = 2.0 * t + 40.0 * math.sqrt(t) + 10.0
    elif n == 2:
        integrand = lambda r: _heat_kernel_h2_scalar(r, t) * math.sinh(r)
        upper = t + 40.0 * math.sqrt(t) + 10.0
    else:
        raise ValueError("heat kernel implemented for n in {2, 3}")
    val, _ = quad(integrand, 0.0, upper, epsabs=0.0, epsrel=1e-9, limit=400)
    return sphere_area(n) * val


# ---------------------------------------------------------------------------
# Half-space travelling wave
# ---------------------------------------------------------------------------


def gtw(y, t, params: ModelParams, c: float = 1.0):
    """Generalized travelling wave (gtw), in half-space coordinates (y > 0):

        u^{m-1} = a (log(c t^gamma y))_+ / t.

    "Generalized" because amplitude and speed are time-dependent; the level
    sets are horospheres.  The support is y >= (c t^gamma)^{-1}; the front
    recedes toward y = 0 at geodesic speed gamma/t.
    """
    if params.is_plap:
        raise ValueError("the half-space wave is defined for the porous-medium flux")
    if c <= 0:
        raise ValueError("c must be positive")
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise ValueError("y must be positive (half-space coordinate)")
    if np.any(np.asarray(t) <= 0):
        raise ValueError("t must be positive")
    omega = np.log(c) + params.gamma * np.log(t) + np.log(y)
    out = (params.slope_a * _positive_part(omega) / t) ** (1.0 / (params.m - 1.0))
    return float(out) if out.ndim == 0 else out


def gtw_front_position(t, params: ModelParams, c: float = 1.0):
    """Half-space height of the free boundary, y_f(t) = (c t^gamma)^{-1}."""
    out = 1.0 / (c * np.asarray(t, dtype=float) ** params.gamma)
    return float(out) if out.ndim == 0 else out


def gtw_front_speed(t, params: ModelParams):
    """Geodesic speed |d s_f / dt| of the half-space front: gamma / t."""
    out = params.gamma / np.asarray(t, dtype=float)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Radial log-cone (approximate solution, exact supersolution for r > 0)
# ---------------------------------------------------------------------------


def log_cone(r, t, params: ModelParams, b: float = 0.0):
    """t^{-1/(m-1)} (a (gamma log t + b - r))_+^{1/(m-1)}.

    The pressure m/(m-1) u^{m-1} is conical with slope gamma in r and the
    support edge sits at r = gamma log t + b.
    """
    if params.is_plap:
        raise ValueError("use plap_cone for the p-flux")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be nonnegative")
    if np.any(np.asarray(t) <= 0):
        raise ValueError("t must be positive")
    xi = params.gamma * np.log(t) + b - r
    out = (params.slope_a * _positive_part(xi) / t) ** (1.0 / (params.m - 1.0))
    return float(out) if out.ndim == 0 else out


def log_cone_edge(t, params: ModelParams, b: float = 0.0):
    """Support edge gamma log t + b of the log-cone."""
    out = params.gamma * np.log(np.asarray(t, dtype=float)) + b
    return float(out) if out.ndim == 0 else out


def log_cone_mass(params: ModelParams, b: float = 0.0) -> float:
    """Large-time mass limit of the log-cone: K(n, m) e^{b (n-1)} with

        K = omega_{n-1} 2^{1-n} a^{1/(m-1)} int_0^inf xi^{1/(m-1)} e^{-(n-1) xi} d xi.

    The prefactor comes from (sinh r)^{n-1} ~ 2^{1-n} e^{(n-1) r} under the
    substitution xi = (edge - r); the integral is done by quadrature.
    """
    if params.is_plap:
        raise ValueError("mass limit implemented for the porous-medium cone")
    n, alpha = params.n, 1.0 / (params.m - 1.0)
    upper = (alpha + 40.0) / (n - 1)
    G, _ = quad(lambda xi: xi**alpha * math.exp(-(n - 1) * xi), 0.0, upper,
                epsabs=0.0, epsrel=1e-12, limit=200)
    d = sphere_area(n) * 2.0 ** (1 - n) * params.slope_a**alpha
    return d * G * math.exp(b * (n - 1))


def log_cone_mass_finite(params: ModelParams, b: float, t: float) -> float:
    """Mass of the log-cone at finite time against the true volume element.

    Increases with t toward log_cone_mass (the sinh factor is below its
    exponential asymptote), which the tests exercise.
    """
    edge = log_cone_edge(t, params, b)
    if edge <= 0:
        raise ValueError("empty support: gamma log t + b must be positive")
    val, _ = quad(
        lambda r: log_cone(r, t, params, b) * math.sinh(r) ** (params.n - 1),
        0.0,
        edge,
        epsabs=0.0,
        epsrel=1e-11,
        limit=200,
    )
    return sphere_area(params.n) * val


def hidden_wave_pressure(r, tau, params: ModelParams, b: float = 0.0):
    """Pressure of the log-cone after w = t^{1/(m-1)} u, tau = log t:
    exactly gamma (gamma tau - r + b)_+ (a travelling wave in tau)."""
    r = np.asarray(r, dtype=float)
    out = params.gamma * _positive_part(params.gamma * tau - r + b)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# p-flux cone
# ---------------------------------------------------------------------------


def plap_cone(r, t, params: ModelParams, b: float = 0.0):
    """a t^{-1/(p-2)} (gamma log t + b - r)_+^{(p-1)/(p-2)} for the p-flux."""
    if not params.is_plap:
        raise ValueError("plap_cone needs p-flux parameters")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be nonnegative")
    if np.any(np.asarray(t) <= 0):
        raise ValueError("t must be positive")
    p = params.p
    xi = params.gamma * np.log(t) + b - r
    out = (
        params.slope_a
        * np.asarray(t, dtype=float) ** (-1.0 / (p - 2.0))
        * _positive_part(xi) ** ((p - 1.0) / (p - 2.0))
    )
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Weighted-Euclidean singular source solution
# ---------------------------------------------------------------------------


def singular_barenblatt(s, t, params: ModelParams, A: float = 1.0):
    """Source solution of the weighted model with exact 1/s^2 density:

        [ log(A t^beta / s)_+ / (m (n-2) t) ]^{1/(m-1)},
        beta = 1/((n-2)(m-1)),  support s <= A t^beta.

    Unbounded (logarithmically) as s -> 0; defined for n >= 3.
    """
    if params.is_plap:
        raise ValueError("defined for the porous-medium flux")
    if params.n < 3:
        raise ValueError("the weighted model needs n >= 3")
    if A <= 0:
        raise ValueError("A must be positive")
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0):
        raise ValueError("s must be positive (log-singular at 0)")
    if np.any(np.asarray(t) <= 0):
        raise ValueError("t must be positive")
    beta = params.beta_weighted
    m, n = params.m, params.n
    arg = _positive_part(np.log(A) + beta * np.log(t) - np.log(s))
    out = (arg / (m * (n - 2) * t)) ** (1.0 / (m - 1.0))
    return float(out) if out.ndim == 0 else out


def singular_barenblatt_energy(params: ModelParams, A: float = 1.0, t: float = 1.0) -> float:
    """Radial 1/s^2-weighted integral int_0^{A t^beta} U s^{n-3} ds (conserved).

    Scales exactly like A^{n-2} by the solution's rescaling identity.
    """
    edge = A * t**params.beta_weighted
    val, _ = quad(
        lambda s: singular_barenblatt(s, t, params, A) * s ** (params.n - 3),
        0.0,
        edge,
        epsabs=0.0,
        epsrel=1e-11,
        limit=200,
    )
    return val


# ---------------------------------------------------------------------------
# Mass rescaling
# ---------------------------------------------------------------------------


def mass_rescale(u_fn, M: float, m: float):
    """Turn a solution into the mass-M member of its scaling family:

        u_M(x, t) = M * u(x, M^{m-1} t).

    Shifts a log-cone's intercept by gamma (m-1) log M.
    """
    if M <= 0:
        raise ValueError("M must be positive")
    if not m > 1:
        raise ValueError("m must exceed 1")

    def rescaled(x, t):
        return M * u_fn(x, M ** (m - 1.0) * t)

    return rescaled


# ---------------------------------------------------------------------------
# Matched lower barrier
# ---------------------------------------------------------------------------


def _coth(x):
    return np.cosh(x) / np.sinh(x)


def _x_coth_x(r):
    r = np.asarray(r, dtype=float)
    small = r < 1e-8
    safe = np.where(small, 1.0, r)
    out = np.where(small, 1.0 + r * r / 3.0, safe * np.cosh(safe) / np.sinh(safe))
    return out


@dataclass(frozen=True)
class MatchedSubsolution:
    """Lower barrier: conical tail for r >= 1 glued C^1 (in u^m) at r = 1 to a
    parabolic cap u^m = C1(t) - C2(t) r^2.

    The tail is t^{-al} (a (gamma log t - r) + b)_+^{al}, al = 1/(m-1), with
    gamma = m a / (m-1).  Two constraints bound the slope a:

      * the tail must absorb coth r <= coth 1 on r >= 1, so
        a <= 1/(coth(1) m (n-1)), with any b >= 0;
      * the cap's decay must dominate its concave spatial operator, which
        holds (asymptotically, with K1 = 2n-1 absorbing 1 + (n-1) r coth r)
        once the amplitude satisfies A^{m-1} <= K gamma log t / t for
        K = 1/(2 m K1); by the matching value of A this reduces to a <~ K.

    Defaults: a = K = 1/(2 m (2n-1)) (below both bounds) and b = a/2, which
    keeps the amplitude condition satisfied with margin (a - b)/t at every
    time past

        t_min = exp((1 - b/a) / gamma),

    where the matching value Q(t) = a (gamma log t - 1) + b turns positive
    (the cone first reaches the gluing radius).  Earlier times raise.  The
    cap coefficients solve C1 - C2 = A^m and 2 C2 = m A^{m-1} B with

        A(t) = t^{-al} Q^{al},   B(t) = a/(m-1) t^{-al} Q^{al-1}.

    This barrier's gamma is smaller than the model's own front coefficient:
    it certifies lower bounds c log t for the front and c' log(t)/t for the
    decay of sup u^{m-1}, not the sharp constants.
    """

    params: ModelParams
    a: float | None = None
    b: float | None = None

    def __post_init__(self):
        if self.params.is_plap:
            raise ValueError("the matched barrier is built for the porous-medium flux")
        m, n = self.params.m, self.params.n
        if self.a is None:
            object.__setattr__(self, "a", 1.0 / (2.0 * m * (2 * n - 1)))
        if self.b is None:
            object.__setattr__(self, "b", self.a / 2.0)
        k = math.cosh(1.0) / math.sinh(1.0)
        if not 0.0 < self.a <= 1.0 / (k * m * (n - 1)):
            raise ValueError(
                "tail slope a must lie in (0, 1/(coth(1) m (n-1))] "
                "for the cone to be a lower barrier beyond the gluing radius"
            )
        if self.b < 0:
            raise ValueError("intercept b must be nonnegative")

    @property
    def k(self) -> float:
        """coth(1), the bound on coth r used on the tail region."""
        return math.cosh(1.0) / math.sinh(1.0)

    @property
    def gamma(self) -> float:
        return self.params.m * self.a / (self.params.m - 1.0)

    @property
    def t_min(self) -> float:
        """Smallest time with a positive matching value Q(t)."""
        return math.exp((1.0 - self.b / self.a) / self.gamma)

    def _check_time(self, t):
        if np.any(np.asarray(t) <= self.t_min):
            raise ValueError(
                f"matching infeasible: need t > {self.t_min:.6g} "
                "so the cone is positive at the gluing radius"
            )

    def _Q(self, t):
        return self.a * (self.gamma * np.log(t) - 1.0) + self.b

    def cap_coefficients(self, t):
        """C1(t), C2(t) of the cap u^m = C1 - C2 r^2."""
        self._check_time(t)
        m = self.params.m
        al = 1.0 / (m - 1.0)
        t = np.asarray(t, dtype=float)
        Q = self._Q(t)
        c2 = m * self.a / (2.0 * (m - 1.0)) * t ** (-1.0 - al) * Q**al
        c1 = t ** (-1.0 - al) * Q**al * (Q + m * self.a / (2.0 * (m - 1.0)))
        return c1, c2

    def _cap_coefficient_rates(self, t):
        # d/dt [t^{-1-al} Q^c] = t^{-2-al} Q^{c-1} (c a gamma - (1+al) Q)
        m = self.params.m
        al = 1.0 / (m - 1.0)
        t = np.asarray(t, dtype=float)
        Q = self._Q(t)
        ag = self.a * self.gamma
        half = m * self.a / (2.0 * (m - 1.0))
        d_c2 = half * t ** (-2.0 - al) * Q ** (al - 1.0) * (al * ag - (1.0 + al) * Q)
        d_high = t ** (-2.0 - al) * Q**al * ((1.0 + al) * ag - (1.0 + al) * Q)
        d_low = half * t ** (-2.0 - al) * Q ** (al - 1.0) * (al * ag - (1.0 + al) * Q)
        return d_high + d_low, d_c2

    def __call__(self, r, t):
        self._check_time(t)
        m = self.params.m
        al = 1.0 / (m - 1.0)
        r = np.asarray(r, dtype=float)
        if np.any(r < 0):
            raise ValueError("radius must be nonnegative")
        t = np.asarray(t, dtype=float)
        c1, c2 = self.cap_coefficients(t)
        outer_arg = _positive_part(self.a * (self.gamma * np.log(t) - r) + self.b)
        outer = np.asarray(t, dtype=float) ** (-al) * outer_arg**al
        cap = _positive_part(c1 - c2 * r * r) ** (1.0 / m)
        out = np.where(r < 1.0, cap, outer)
        return float(out) if out.ndim == 0 else out

    def outer_residual(self, r, t):
        """d_t U - L(U^m) on the conical part (analytic); <= 0 where the
        cone is positive, since coth r <= coth 1 there."""
        self._check_time(t)
        m, n = self.params.m, self.params.n
        al = 1.0 / (m - 1.0)
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        P = self.a * (self.gamma * np.log(t) - r) + self.b
        if np.any(P <= 0):
            raise ValueError("outer residual sampled outside the support")
        u_t = al * t ** (-al - 1.0) * P ** (al - 1.0) * (self.a * self.gamma - P)
        mal = m * al
        v_r = -mal * self.a * t ** (-mal) * P ** (mal - 1.0)
        v_rr = mal * (mal - 1.0) * self.a**2 * t ** (-mal) * P ** (mal - 2.0)
        out = u_t - v_rr - (n - 1) * _coth(r) * v_r
        return float(out) if out.ndim == 0 else out

    def inner_residual(self, r, t):
        """d_t U - L(U^m) on the cap (analytic in r, exact coefficient rates)."""
        self._check_time(t)
        m, n = self.params.m, self.params.n
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        c1, c2 = self.cap_coefficients(t)
        d_c1, d_c2 = self._cap_coefficient_rates(t)
        W = c1 - c2 * r * r
        if np.any(W <= 0):
            raise ValueError("cap sampled outside its positivity set")
        u_t = (1.0 / m) * W ** (1.0 / m - 1.0) * (d_c1 - d_c2 * r * r)
        lap = -2.0 * c2 - 2.0 * (n - 1) * c2 * _x_coth_x(r)
        out = u_t - lap
        return float(out) if out.ndim == 0 else out

    def sufficient_condition_margin(self, t):
        """K gamma log t / t - A(t)^{m-1} with K = 1/(2 m (2n-1));
        nonnegative once t is large enough."""
        self._check_time(t)
        m, n = self.params.m, self.params.n
        t = np.asarray(t, dtype=float)
        K = 1.0 / (2.0 * m * (2 * n - 1))
        A_pow = self._Q(t) / t  # A^{m-1} = t^{-1} Q
        out = K * self.gamma * np.log(t) / t - A_pow
        return float(out) if out.ndim == 0 else out

    def verify(self, t: float, n_samples: int = 400) -> dict:
        """Sample both differential inequalities and the gluing at r = 1."""
        self._check_time(t)
        edge = (self.gamma * math.log(t) + self.b / self.a) if self.a else 0.0
        r_out = np.linspace(1.0, edge - 1e-6, n_samples)
        r_in = np.linspace(1e-6, 1.0 - 1e-9, n_samples)
        outer = self.outer_residual(r_out, t)
        inner = self.inner_residual(r_in, t)
        u_left = self(1.0 - 1e-9, t)
        u_right = self(1.0 + 1e-9, t)
        c1, c2 = self.cap_coefficients(t)
        m = self.params.m
        al = 1.0 / (m - 1.0)
        Q = self._Q(t)
        slope_inner = -2.0 * c2
        slope_outer = -m * al * self.a * t ** (-m * al) * Q ** (m * al - 1.0)
        return {
            "max_outer_residual": float(np.max(outer)),
            "max_inner_residual": float(np.max(inner)),
            "continuity_gap": abs(u_left - u_right),
            "flux_match_gap": abs(slope_inner - slope_outer),
            "sufficient_condition_margin": float(self.sufficient_condition_margin(t)),
        }


def subsolution_matched(
    params: ModelParams, a: float | None = None, b: float | None = None
) -> MatchedSubsolution:
    return MatchedSubsolution(params=params, a=a, b=b)


# ---------------------------------------------------------------------------
# Uniform front-end for the CLI
# ---------------------------------------------------------------------------

SOLUTION_KINDS = (
    "barenblatt",
    "heat-kernel-h2",
    "heat-kernel-h3",
    "gtw",
    "log-cone",
    "plap-cone",
    "singular-barenblatt",
    "subsolution",
)


@dataclass(frozen=True)
class ClosedFormSolution:
    """A catalog entry bound to concrete parameters, evaluable on (x, t).

    kind selects the family; extra holds the family's free constants
    (b for cones, c for the half-space wave, A for the singular source).
    """

    kind: str
    params: ModelParams
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in SOLUTION_KINDS:
            raise ValueError(f"unknown solution kind {self.kind!r}")

    def evaluate(self, x, t):
        k = self.kind
        if k == "barenblatt":
            return barenblatt(x, t, self.params)
        if k == "heat-kernel-h2":
            return heat_kernel(x, t, 2)
        if k == "heat-kernel-h3":
            return heat_kernel(x, t, 3)
        if k == "gtw":
            return gtw(x, t, self.params, self.extra.get("c", 1.0))
        if k == "log-cone":
            return log_cone(x, t, self.params, self.extra.get("b", 0.0))
        if k == "plap-cone":
            return plap_cone(x, t, self.params, self.extra.get("b", 0.0))
        if k == "singular-barenblatt":
            return singular_barenblatt(x, t, self.params, self.extra.get("A", 1.0))
        if k == "subsolution":
            return subsolution_matched(
                self.params, self.extra.get("a"), self.extra.get("b")
            )(x, t)
        raise AssertionError(k)

    def pressure_of(self, u):
        """Pressure column for output tables.

        Porous-medium kinds use m/(m-1) u^{m-1}; the p-flux cone uses the
        front-linear power u^{(p-2)/(p-1)}; the linear kernels repeat u.
        """
        if self.kind in ("heat-kernel-h2", "heat-kernel-h3"):
            return np.asarray(u, dtype=float)
        if self.kind == "plap-cone":
            p = self.params.p
            return np.asarray(u, dtype=float) ** ((p - 2.0) / (p - 1.0))
        return pressure(u, self.params.m)
