"""Adaptive Gauss-Kronrod quadrature with error estimates.

:func:`integrate_finite` applies the 7/15-point Gauss-Kronrod pair with
global adaptive bisection (always splitting the interval with the largest
error estimate).  :func:`integrate_gaussian_tail` handles ``[a, inf)`` for
integrands dominated by ``K rho^p exp(-rho^2)``: it integrates up to a
cutoff and adds the exact upper incomplete-gamma tail of the envelope to
the error estimate.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma, gammaincc

from .errors import DomainError
from .tolerances import GAUSSIAN_TAIL_CUTOFF, QUAD_MAX_INTERVALS, QUAD_TOL

_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
# abscissae of one interval: -x_0..-x_6, 0, x_6..x_0
_NODES = np.concatenate([-_XK[:-1], [0.0], _XK[-2::-1]])
_KRONROD = np.concatenate([_WK[:-1], [_WK[-1]], _WK[-2::-1]])
_GAUSS = np.zeros(15)
_GAUSS[1:7:2] = _WG[:3]
_GAUSS[7] = _WG[3]
_GAUSS[13:7:-2] = _WG[:3]

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class QuadratureEstimate:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool


def _evaluator(integrand, vectorized):
    if vectorized:
        def f(x):
            return np.asarray(integrand(x), dtype=float)
    else:
        def f(x):
            return np.array([integrand(float(t)) for t in x], dtype=float)
    return f


def _gk15(f, a, b):
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    fv = f(center + half * _NODES)
    if not np.all(np.isfinite(fv)):
        raise DomainError(f"integrand is not finite on [{a!r}, {b!r}]")
    resk = float(_KRONROD @ fv) * half
    resg = float(_GAUSS @ fv) * half
    resabs = float(_KRONROD @ np.abs(fv)) * abs(half)
    mean = resk / (b - a) if b != a else 0.0
    resasc = float(_KRONROD @ np.abs(fv - mean * 1.0)) * abs(half)
    err = abs(resk - resg)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _TINY / (50.0 * _EPS):
        err = max(50.0 * _EPS * resabs, err)
    return resk, err


def integrate_finite(integrand, a, b, tol=QUAD_TOL, max_intervals=QUAD_MAX_INTERVALS,
                     vectorized=False):
    """Integrate ``integrand`` over ``[a, b]`` to absolute tolerance ``tol``.

    When ``vectorized`` is true the integrand is called with arrays of
    nodes; otherwise once per node.  If ``max_intervals`` subintervals are
    reached first, the best estimate is returned with ``converged=False``.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"need finite a < b, got [{a!r}, {b!r}]")
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    f = _evaluator(integrand, vectorized)

    value, err = _gk15(f, a, b)
    heap = [(-err, a, b, value)]
    n_eval = 15
    total_err = err
    while total_err > tol and len(heap) < max_intervals:
        neg_err, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            # cannot split further in floating point
            heapq.heappush(heap, (neg_err, lo, hi, _))
            break
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        n_eval += 30
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        total_err = math.fsum(-item[0] for item in heap)

    pieces = sorted(heap, key=lambda item: item[1])
    value = math.fsum(item[3] for item in pieces)
    total_err = math.fsum(-item[0] for item in pieces)
    return QuadratureEstimate(value, total_err, n_eval, total_err <= tol)


def gaussian_envelope_tail(cutoff, decay_scale=1.0, power=2):
    """Exact value of decay_scale * int_cutoff^inf rho^power exp(-rho^2) d rho."""
    s = 0.5 * (power + 1)
    return decay_scale * 0.5 * float(gamma(s) * gammaincc(s, cutoff * cutoff))


def integrate_gaussian_tail(integrand, a, tol=QUAD_TOL, decay_scale=1.0, cutoff=None,
                            power=2, max_intervals=QUAD_MAX_INTERVALS, vectorized=False):
    """Integrate over ``[a, inf)`` an integrand with a Gaussian-decay envelope.

    The caller guarantees ``|integrand(rho)| <= decay_scale * rho**power *
    exp(-rho**2)`` for ``rho`` beyond the cutoff.  Without an explicit
    ``cutoff`` the integration stops at ``max(a, 8)``, pushed further out
    while the envelope tail exceeds ``tol / 4``.
    """
    a = float(a)
    if not math.isfinite(a) or a < 0:
        raise DomainError(f"need a finite a >= 0, got {a!r}")
    if not decay_scale > 0:
        raise DomainError(f"decay_scale must be positive, got {decay_scale!r}")
    if cutoff is None:
        T = max(a, GAUSSIAN_TAIL_CUTOFF)
        while gaussian_envelope_tail(T, decay_scale, power) > 0.25 * tol:
            T += 2.0
    else:
        T = max(a, float(cutoff))
    remainder = gaussian_envelope_tail(T, decay_scale, power)
    if T == a:
        return QuadratureEstimate(0.0, remainder, 1, remainder <= tol)
    finite = integrate_finite(integrand, a, T, max(tol - remainder, 0.5 * tol),
                              max_intervals=max_intervals, vectorized=vectorized)
    err = finite.abs_error_estimate + remainder
    return QuadratureEstimate(finite.value, err, finite.evaluations,
                              finite.converged and err <= tol)
