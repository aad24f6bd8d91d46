# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in ``_pykernels``; same signatures."""

import numpy as np
from libc.math cimport sqrt, cos, sin, fabs

NAME = "cython"

cdef enum:
    MAX_POW = 256


cdef inline void _powers(double c, double* cp, int kmax) noexcept nogil:
    cdef int k
    cp[0] = 1.0
    for k in range(1, kmax + 1):
        cp[k] = cp[k - 1] * c


cdef inline double _f_bound(double rho, double c, const double* cp) noexcept nogil:
    cdef double r2 = rho * rho
    cdef double inv_r2 = 1.0 / r2
    cdef double out = 2.0 * (c / rho) * (1.0 + r2 / c) * (1.0 - cp[12]) / (1.0 - cp[10])
    cdef double num, den
    cdef int n
    for n in range(1, 6):
        num = (1.0 + r2 * cp[2 * n - 1]) * (1.0 + cp[2 * n + 1] * inv_r2) * (1.0 + cp[2 * n]) * (1.0 + cp[2 * n])
        den = (1.0 + cp[2 * n - 1]) * (1.0 + cp[2 * n - 1]) * (1.0 + r2 * cp[2 * n - 2]) * (1.0 + cp[2 * n] * inv_r2)
        out *= num / den
    return out


cdef inline double _g_factor(double r2, double cos_t, const double* cp, int n) noexcept nogil:
    cdef double a = cp[2 * n]
    cdef double b = r2 * cp[2 * n - 2]
    cdef double d = a / r2
    cdef double num = 1.0 - 2.0 * a * cos_t + a * a
    return num / sqrt((1.0 - 2.0 * b * cos_t + b * b) * (1.0 - 2.0 * d * cos_t + d * d))


def f_bound(const double[::1] rho, double c):
    cdef Py_ssize_t i, m = rho.shape[0]
    cdef double cp[16]
    out = np.empty(m)
    cdef double[::1] o = out
    with nogil:
        _powers(c, cp, 12)
        for i in range(m):
            o[i] = _f_bound(rho[i], c, cp)
    return out


def bergman_integrand(const double[::1] rho, double c):
    cdef Py_ssize_t i, m = rho.shape[0]
    cdef double F
    cdef double cp[16]
    out = np.empty(m)
    cdef double[::1] o = out
    with nogil:
        _powers(c, cp, 12)
        for i in range(m):
            F = _f_bound(rho[i], c, cp)
            if F < 1.0:
                o[i] = rho[i] * sqrt((1.0 - F) * (1.0 + F)) / F
            else:
                o[i] = 0.0
    return out


def circle_product(const double[::1] rho, const double[::1] theta, double c, int nterms):
    cdef Py_ssize_t i, m = rho.shape[0]
    cdef int n
    cdef double r2, cos_t, v, co
    cdef double cp[MAX_POW + 2]
    if nterms < 0 or 2 * nterms + 1 > MAX_POW:
        raise ValueError(f"nterms must lie in [0, {(MAX_POW - 1) // 2}], got {nterms}")
    out = np.empty(m)
    cdef double[::1] o = out
    with nogil:
        _powers(c, cp, 2 * nterms + 1)
        for i in range(m):
            r2 = rho[i] * rho[i]
            cos_t = cos(theta[i])
            v = (c / rho[i]) * (1.0 + r2 / c) * 2.0 * fabs(sin(0.5 * theta[i]))
            for n in range(1, nterms + 1):
                co = cp[2 * n - 1]
                v *= (1.0 + r2 * co) * (1.0 + cp[2 * n + 1] / r2) / ((1.0 + co) * (1.0 + co))
                v *= _g_factor(r2, cos_t, cp, n)
            o[i] = v
    return out


def tedious_excess(const double[::1] rho, const double[::1] theta, double c):
    cdef Py_ssize_t i, m = rho.shape[0]
    cdef int n
    cdef double r2, cos_t, lhs, rhs
    cdef double cp[16]
    out = np.empty(m)
    cdef double[::1] o = out
    with nogil:
        _powers(c, cp, 12)
        for i in range(m):
            r2 = rho[i] * rho[i]
            cos_t = cos(theta[i])
            lhs = 2.0 * fabs(sin(0.5 * theta[i]))
            rhs = 2.0
            for n in range(1, 6):
                lhs *= _g_factor(r2, cos_t, cp, n)
                rhs *= _g_factor(r2, -1.0, cp, n)
            o[i] = lhs - rhs
    return out
