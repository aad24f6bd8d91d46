"""Pseudohyperbolic distance on the unit disk and the elementary
identities and inequalities the certification argument rests on.

Complex scalars are plain Python ``complex`` values.  The residual
functions return raw residuals; the tolerance each one is held to lives
in :mod:`korenblum.tolerances`.
"""

import cmath
import math

import mpmath

from .errors import DomainError

# working precision (decimal digits) for identity residuals
RESIDUAL_DPS = 30


def as_complex(x, name="value"):
    """Coerce ``x`` to a finite ``complex`` or raise :class:`DomainError`."""
    try:
        z = complex(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} is not a number: {x!r}") from exc
    if not cmath.isfinite(z):
        raise DomainError(f"{name} must be finite, got {z!r}")
    return z


def disk_point(x, name="value"):
    """Coerce ``x`` to a point of the open unit disk."""
    z = as_complex(x, name)
    if abs(z) >= 1.0:
        raise DomainError(f"{name} must lie in the open unit disk, |{name}| = {abs(z)!r}")
    return z


def pseudo_distance(alpha, beta):
    """Pseudohyperbolic distance |a - b| / |1 - conj(a) b| on the unit disk."""
    a = disk_point(alpha, "alpha")
    b = disk_point(beta, "beta")
    if a == b:
        return 0.0
    # symmetric by construction: |1 - conj(a) b| = |1 - conj(b) a|
    num = abs(a - b)
    den = abs(1.0 - a.conjugate() * b)
    return min(num / den, math.nextafter(1.0, 0.0))


def ratio_identity_residual(alpha, beta):
    """Residual of |a-b|/(1-|a|^2) = d/sqrt(1-d^2) * sqrt(1-|b|^2)/sqrt(1-|a|^2).

    Both sides are evaluated from the (exact) binary inputs in
    ``RESIDUAL_DPS``-digit arithmetic: in double precision d/sqrt(1-d^2)
    loses about 1e-11 absolute once both points approach the circle.
    """
    a = disk_point(alpha, "alpha")
    b = disk_point(beta, "beta")
    with mpmath.workdps(RESIDUAL_DPS):
        ma = mpmath.mpc(a.real, a.imag)
        mb = mpmath.mpc(b.real, b.imag)
        lhs = abs(ma - mb) / (1 - abs(ma) ** 2)
        d = abs(ma - mb) / abs(1 - mpmath.conj(ma) * mb)
        rhs = d / mpmath.sqrt(1 - d * d) * mpmath.sqrt(1 - abs(mb) ** 2) / mpmath.sqrt(1 - abs(ma) ** 2)
        return float(abs(lhs - rhs))


def square_difference_gap(alpha, beta):
    """2|a^2 - ab| - (|a|^2 - |b|^2); nonnegative for every pair."""
    a = as_complex(alpha, "alpha")
    b = as_complex(beta, "beta")
    return 2.0 * abs(a * a - a * b) - (abs(a) ** 2 - abs(b) ** 2)


def quotient_identity_residual(f, g, omega_rho):
    """Residual of |f^2 - w_r f g| = |w| |w - w_r| / (1 - |w|^2) * (|g|^2 - |f|^2), w = f/g.

    ``f`` and ``g`` are values of the two functions at one point, and
    ``omega_rho`` a disk point standing in for the quotient's value at the
    maximizing point of the circle.
    """
    f = as_complex(f, "f")
    g = as_complex(g, "g")
    wr = disk_point(omega_rho, "omega_rho")
    if g == 0:
        raise DomainError("g must be nonzero")
    if abs(f) >= abs(g):
        raise DomainError("need |f| < |g|")
    w = f / g
    lhs = abs(f * f - wr * f * g)
    rhs = abs(w) * abs(w - wr) / (1.0 - abs(w) ** 2) * (abs(g) ** 2 - abs(f) ** 2)
    return abs(lhs - rhs)


def circle_mean_sq(coeffs, r):
    """Mean of |p|^2 over the circle |z| = r for p = sum coeffs[k] z^k."""
    return sum(abs(complex(a)) ** 2 * r ** (2 * k) for k, a in enumerate(coeffs))
