"""Numpy implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable, and as the
reference the compiled kernels are checked against.  Every function takes
1-D float64 arrays of equal length and returns a new array.
"""

import numpy as np

NAME = "python"


def f_bound(rho, c):
    rho = np.asarray(rho, dtype=float)
    r2 = rho * rho
    out = 2.0 * (c / rho) * (1.0 + r2 / c) * (1.0 - c**12) / (1.0 - c**10)
    for n in range(1, 6):
        num = (1.0 + r2 * c ** (2 * n - 1)) * (1.0 + c ** (2 * n + 1) / r2) * (1.0 + c ** (2 * n)) ** 2
        den = (1.0 + c ** (2 * n - 1)) ** 2 * (1.0 + r2 * c ** (2 * n - 2)) * (1.0 + c ** (2 * n) / r2)
        out = out * (num / den)
    return out


def bergman_integrand(rho, c):
    rho = np.asarray(rho, dtype=float)
    F = f_bound(rho, c)
    out = np.zeros_like(rho)
    ok = F < 1.0
    Fo = F[ok]
    out[ok] = rho[ok] * np.sqrt((1.0 - Fo) * (1.0 + Fo)) / Fo
    return out


def _g_factor(r2, c, cos_t, n):
    a = c ** (2 * n)
    b = r2 * c ** (2 * n - 2)
    d = c ** (2 * n) / r2
    num = 1.0 - 2.0 * a * cos_t + a * a
    return num / np.sqrt((1.0 - 2.0 * b * cos_t + b * b) * (1.0 - 2.0 * d * cos_t + d * d))


def circle_product(rho, theta, c, nterms):
    rho = np.asarray(rho, dtype=float)
    theta = np.asarray(theta, dtype=float)
    r2 = rho * rho
    cos_t = np.cos(theta)
    out = (c / rho) * (1.0 + r2 / c) * 2.0 * np.abs(np.sin(0.5 * theta))
    for n in range(1, nterms + 1):
        fn = (1.0 + r2 * c ** (2 * n - 1)) * (1.0 + c ** (2 * n + 1) / r2) / (1.0 + c ** (2 * n - 1)) ** 2
        out = out * fn * _g_factor(r2, c, cos_t, n)
    return out


def tedious_excess(rho, theta, c):
    rho = np.asarray(rho, dtype=float)
    theta = np.asarray(theta, dtype=float)
    r2 = rho * rho
    cos_t = np.cos(theta)
    lhs = 2.0 * np.abs(np.sin(0.5 * theta))
    rhs = np.full_like(rho, 2.0)
    for n in range(1, 6):
        lhs = lhs * _g_factor(r2, c, cos_t, n)
        rhs = rhs * _g_factor(r2, c, -1.0, n)
    return lhs - rhs
