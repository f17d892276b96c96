"""Discrete problem assembly: grid plus coefficient arrays for one model.

Every model here has the divergence form

    A(x) d_t u = d_x ( B(x) d_x phi(u) )            (power flux), or
    A(x) d_t u = d_x ( B(x) psi(d_x u) )            (gradient flux),

with zero flux at both ends of the domain.  The kinds:

    hyperbolic-radial    A = B = (sinh x)^{n-1}; phi(u) = u^m.  Radial
                         porous-medium flow on hyperbolic space.
    euclidean            A = B = x^{n-1}; the flat-space reference.
    weighted-euclidean   A = rho(x) x^{n-1}, B = x^{n-1} (n >= 3): the image
                         of the hyperbolic-radial problem under the r -> s
                         change of variables, solved as an independent route.
    approx-constant      A = B = e^{(n-1) x}: the flow with coth replaced by
                         its large-radius limit 1, whose solutions are the
                         half-space travelling waves in radial coordinates.
    plap-hyperbolic      A = B = (sinh x)^{n-1}; gradient flux
                         psi(g) = |g|^{p-2} g.

Cell coefficients are 4-point Gauss-Legendre cell averages of A; face
coefficients are exact values of B at the faces (B(0) = 0 closes the origin
without special-casing).  The reported mass of a state u is

    omega_{n-1} * sum_i A_i dx_i u_i,

the full n-dimensional integral of the radial profile.
"""

from dataclasses import dataclass, field

import numpy as np

from .geometry import get_map, sphere_area
from .grid import Grid1D
from .params import ModelParams

PROBLEM_KINDS = (
    "hyperbolic-radial",
    "euclidean",
    "weighted-euclidean",
    "approx-constant",
    "plap-hyperbolic",
)

_GL4_X, _GL4_W = np.polynomial.legendre.leggauss(4)


@dataclass(frozen=True)
class Problem:
    kind: str
    params: ModelParams
    grid: Grid1D
    cell_coeff: np.ndarray = field(repr=False)  # A_i, cell averages
    face_coeff: np.ndarray = field(repr=False)  # B(faces), size N+1

    @property
    def omega(self) -> float:
        """Angular measure turning radial integrals into n-dimensional ones."""
        return sphere_area(self.params.n)

    @property
    def is_gradient_flux(self) -> bool:
        return self.kind == "plap-hyperbolic"

    @property
    def flux_exponent(self) -> float:
        """m for power flux, p for gradient flux."""
        return self.params.p if self.is_gradient_flux else self.params.m

    def cell_measure(self) -> np.ndarray:
        """A_i dx_i: the radial measure of each cell."""
        return self.cell_coeff * self.grid.widths

    def mass(self, u: np.ndarray) -> float:
        return self.omega * float(np.dot(self.cell_measure(), u))

    def with_grid(self, grid: Grid1D) -> "Problem":
        """Rebuild the coefficient arrays on another grid (front extension)."""
        return build_problem(self.kind, self.params, grid)


def _weight_fn(kind: str, params: ModelParams):
    n = params.n
    if kind in ("hyperbolic-radial", "plap-hyperbolic"):
        return lambda x: np.sinh(x) ** (n - 1)
    if kind == "euclidean":
        return lambda x: x ** (n - 1)
    if kind == "approx-constant":
        return lambda x: np.exp((n - 1) * x)
    raise AssertionError(kind)


def build_problem(kind: str, params: ModelParams, grid: Grid1D) -> Problem:
    if kind not in PROBLEM_KINDS:
        raise ValueError(f"unknown problem kind {kind!r}")
    if kind == "plap-hyperbolic":
        if not params.is_plap:
            raise ValueError("plap-hyperbolic needs p-flux parameters (p > 2)")
    elif params.is_plap:
        raise ValueError(f"{kind} needs porous-medium parameters (m > 1)")
    faces = grid.faces
    mid = 0.5 * (faces[1:] + faces[:-1])
    half = 0.5 * np.diff(faces)
    pts = mid[:, None] + half[:, None] * _GL4_X[None, :]
    if kind == "weighted-euclidean":
        if params.n < 3:
            raise ValueError("the weighted model needs n >= 3")
        cmap = get_map(params.n)
        dens = cmap.rho(pts.ravel()).reshape(pts.shape)
        cell_vals = dens * pts ** (params.n - 1)
        face_coeff = faces ** (params.n - 1)
    else:
        w = _weight_fn(kind, params)
        cell_vals = w(pts)
        # B vanishes at the origin for the power weights, closing the
        # coordinate boundary; approx-constant has B(0) = 1 and relies on
        # the solver's zero-flux convention at face 0 instead.
        face_coeff = w(faces)
    # Gauss-Legendre weights sum to 2, so the cell average is sum(w_k f_k)/2.
    cell_coeff = 0.5 * (cell_vals * _GL4_W[None, :]).sum(axis=1)
    return Problem(
        kind=kind,
        params=params,
        grid=grid,
        cell_coeff=cell_coeff,
        face_coeff=face_coeff,
    )
