# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the implicit-step kernels.

Same contract as _kernels_py (see its docstring for the array layout); the
tridiagonal system is solved by the Thomas algorithm, which is stable here
because the Jacobian is strictly diagonally dominant.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, pow

cnp.import_array()

MODEL_POWER = 0
MODEL_GRADIENT = 1


cdef inline double _pow(double x, double e) noexcept nogil:
    # libc pow costs ~100x a multiply; the exponents the committed runs use
    # are small integers, so fast-path them (e is loop-invariant per call)
    if e == 1.0:
        return x
    if e == 2.0:
        return x * x
    if e == 3.0:
        return x * x * x
    return pow(x, e)


cdef inline double _face_flux(double ul, double ur, double b, double invd,
                              int model, double expo) noexcept nogil:
    cdef double g
    if model == 0:
        return b * invd * (_pow(ur, expo) - _pow(ul, expo))
    g = (ur - ul) * invd
    return b * _pow(fabs(g), expo - 2.0) * g


def residual(double[::1] u, double[::1] u_old, double[::1] avdx,
             double[::1] bface, double[::1] invdelta, double dt,
             int model, double expo):
    cdef Py_ssize_t n = u.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double F
    with nogil:
        for i in range(n):
            out[i] = avdx[i] * (u[i] - u_old[i])
        for i in range(n - 1):
            F = _face_flux(u[i], u[i + 1], bface[i], invdelta[i], model, expo)
            out[i] -= dt * F
            out[i + 1] += dt * F
    return out_arr


def newton_direction(double[::1] u, double[::1] u_old, double[::1] avdx,
                     double[::1] bface, double[::1] invdelta, double dt,
                     int model, double expo):
    cdef Py_ssize_t n = u.shape[0]
    G_arr = np.empty(n)
    delta_arr = np.empty(n)
    scratch_arr = np.empty((3, n))
    cdef double[::1] G = G_arr
    cdef double[::1] delta = delta_arr
    cdef double[:, ::1] W = scratch_arr  # rows: diag, upper ratio, rhs
    cdef Py_ssize_t i
    cdef double F, g, flo, fhi, piv, cond
    with nogil:
        for i in range(n):
            G[i] = avdx[i] * (u[i] - u_old[i])
            W[0, i] = avdx[i]
            W[1, i] = 0.0
        for i in range(n - 1):
            F = _face_flux(u[i], u[i + 1], bface[i], invdelta[i], model, expo)
            G[i] -= dt * F
            G[i + 1] += dt * F
            if model == 0:
                flo = bface[i] * invdelta[i] * expo * _pow(u[i], expo - 1.0)
                fhi = bface[i] * invdelta[i] * expo * _pow(u[i + 1], expo - 1.0)
            else:
                g = (u[i + 1] - u[i]) * invdelta[i]
                cond = bface[i] * invdelta[i] * (expo - 1.0) * _pow(fabs(g), expo - 2.0)
                flo = cond
                fhi = cond
            W[0, i] += dt * flo
            W[0, i + 1] += dt * fhi
            W[1, i] = -dt * fhi  # J[i, i+1]
            W[2, i] = -dt * flo  # J[i+1, i]
        # Thomas sweep: forward elimination then back substitution.
        piv = W[0, 0]
        W[1, 0] = W[1, 0] / piv
        delta[0] = G[0] / piv
        for i in range(1, n):
            piv = W[0, i] - W[2, i - 1] * W[1, i - 1]
            if i < n - 1:
                W[1, i] = W[1, i] / piv
            delta[i] = (G[i] - W[2, i - 1] * delta[i - 1]) / piv
        for i in range(n - 2, -1, -1):
            delta[i] = delta[i] - W[1, i] * delta[i + 1]
    return G_arr, delta_arr
