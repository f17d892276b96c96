"""Numpy implementation of the implicit-step kernels.

Reference backend: always available, and the ground truth the compiled
backend is parity-tested against.  Both expose the same two functions.

Layout: u, u_old, avdx are cell arrays (size N); bface and invdelta live on
the N-1 interior faces.  Boundary fluxes are identically zero, which
encodes the no-flux conditions at the origin and the outer wall.  avdx is
the cell measure A_i dx_i, so residuals carry mass units: their sum over
cells is exactly the mass change of the step.

model 0 (power flux):    F_j = B_j (u_j^expo - u_{j-1}^expo) / delta_j
model 1 (gradient flux): F_j = B_j psi((u_j - u_{j-1}) / delta_j),
                         psi(g) = |g|^(expo-2) g.
"""

import numpy as np
from scipy.linalg import solve_banded

MODEL_POWER = 0
MODEL_GRADIENT = 1


def residual(u, u_old, avdx, bface, invdelta, dt, model, expo):
    """G_i = avdx_i (u_i - u_old_i) - dt (F_above(i) - F_below(i))."""
    if model == MODEL_POWER:
        phi = u**expo
        F = bface * invdelta * (phi[1:] - phi[:-1])
    else:
        grad = (u[1:] - u[:-1]) * invdelta
        F = bface * np.abs(grad) ** (expo - 2.0) * grad
    G = avdx * (u - u_old)
    G[:-1] -= dt * F
    G[1:] += dt * F
    return G


def newton_direction(u, u_old, avdx, bface, invdelta, dt, model, expo):
    """Residual G and the Newton step delta with J delta = G.

    J is tridiagonal and strictly diagonally dominant by columns (the
    off-diagonal entries of each column sum to diag - avdx), so the solve
    needs no pivoting; the banded LAPACK routine is used here.
    """
    G = residual(u, u_old, avdx, bface, invdelta, dt, model, expo)
    if model == MODEL_POWER:
        dphi = expo * u ** (expo - 1.0)
        flo = bface * invdelta * dphi[:-1]  # -dF_j/du_{j-1}
        fhi = bface * invdelta * dphi[1:]  # +dF_j/du_j
    else:
        grad = (u[1:] - u[:-1]) * invdelta
        cond = bface * invdelta * (expo - 1.0) * np.abs(grad) ** (expo - 2.0)
        flo = cond
        fhi = cond
    n = u.size
    ab = np.zeros((3, n))
    ab[1, :] = avdx
    ab[1, :-1] += dt * flo
    ab[1, 1:] += dt * fhi
    ab[0, 1:] = -dt * fhi
    ab[2, :-1] = -dt * flo
    delta = solve_banded((1, 1), ab, G)
    return G, delta
