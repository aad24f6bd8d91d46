"""The Bergman and Fock criteria, certificates with error budgets, and a
bisection search for the largest constant the method certifies.

A constant ``c`` is certified numerically for a space when
``criterion + error_budget < 1``.  The budget is built from quadrature
error estimates; it is an estimate, not a proof.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import kernels, tolerances as tols
from .annulus import DEFAULT_TRUNCATION, TruncationPolicy
from .errors import (ConsistencyError, DegenerateCriterionError, DomainError,
                     InvalidBracketError, NonMonotoneError)
from .quadrature import QuadratureEstimate, integrate_finite, integrate_gaussian_tail

SPACES = ("bergman", "fock")


@dataclass(frozen=True)
class Certificate:
    space: str
    c: float
    numerator: float
    denominator: QuadratureEstimate
    criterion: float
    error_budget: float
    passed: bool
    truncation_policy: TruncationPolicy
    clamped_fraction: float | None = None

    @property
    def margin(self):
        return 1.0 - self.criterion - self.error_budget


@dataclass(frozen=True)
class SearchResult:
    space: str
    c_max: float
    bracket: tuple
    iterations: int
    certificates_at_endpoints: tuple
    scan: tuple = ()


def _check_bergman_c(c):
    if not (0 < c < 1) or not math.isfinite(c):
        raise DomainError(f"Bergman constant must lie in (0, 1), got {c!r}")


def bergman_integrand(rho, c, trunc=DEFAULT_TRUNCATION):
    """rho sqrt(1 - F^2) / F where F(rho, c) < 1, and 0 where F >= 1.

    ``trunc`` is accepted for interface symmetry; F is a finite product
    and involves no truncation.
    """
    _check_bergman_c(c)
    r = np.asarray(rho, dtype=float)
    if r.size and not (np.all(r > c) and np.all(r < 1)):
        raise DomainError(f"need c < rho < 1 (c={c!r})")
    return kernels.bergman_integrand(rho, c)


def f_below_one_segments(c, scan_points=tols.KINK_SCAN_POINTS):
    """Maximal subintervals of (c, 1) on which F(rho, c) < 1.

    Sign changes of F - 1 are located on a ``scan_points`` grid and
    refined by Brent's method to full precision.
    """
    _check_bergman_c(c)
    grid = np.linspace(c, 1.0, scan_points)
    below = kernels.f_bound(grid, c) < 1.0

    def g(r):
        return kernels.f_bound(r, c) - 1.0

    cuts = [c]
    for i in np.nonzero(below[1:] != below[:-1])[0]:
        cuts.append(brentq(g, grid[i], grid[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
    cuts.append(1.0)
    segments = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi > lo and kernels.f_bound(0.5 * (lo + hi), c) < 1.0:
            segments.append((lo, hi))
    return segments


def bergman_denominator(c, tol=tols.QUAD_TOL, trunc=DEFAULT_TRUNCATION):
    """Integral of the Bergman integrand over (c, 1), split at the F = 1 crossings.

    Returns the combined estimate and the fraction of (c, 1) where F >= 1.
    """
    segments = f_below_one_segments(c)
    if not segments:
        return QuadratureEstimate(0.0, 0.0, tols.KINK_SCAN_POINTS, True), 1.0
    share = tol / len(segments)
    parts = [
        integrate_finite(lambda r: kernels.bergman_integrand(r, c), lo, hi, share, vectorized=True)
        for lo, hi in segments
    ]
    covered = math.fsum(hi - lo for lo, hi in segments)
    est = QuadratureEstimate(
        math.fsum(p.value for p in parts),
        math.fsum(p.abs_error_estimate for p in parts),
        sum(p.evaluations for p in parts),
        all(p.converged for p in parts),
    )
    return est, max(0.0, 1.0 - covered / (1.0 - c))


def _quotient_budget(numerator, den):
    """Change in numerator / value when value moves down by its error estimate."""
    lower = den.value - den.abs_error_estimate
    if lower <= 0:
        return math.inf
    return numerator / lower - numerator / den.value


def bergman_criterion(c, tol=tols.QUAD_TOL, trunc=DEFAULT_TRUNCATION):
    """c^2 / int_c^1 rho sqrt(1 - F^2) / F d rho, with its error budget."""
    _check_bergman_c(c)
    den, clamped = bergman_denominator(c, tol, trunc)
    if den.value <= tol:
        raise DegenerateCriterionError(
            f"Bergman denominator {den.value:.3g} <= tol at c={c!r}: F >= 1 on "
            f"{clamped:.1%} of (c, 1), criterion unbounded"
        )
    numerator = c * c
    criterion = numerator / den.value
    # F is a closed finite product, so the truncation-sensitivity term is zero
    budget = _quotient_budget(numerator, den)
    return Certificate("bergman", c, numerator, den, criterion, budget,
                       criterion + budget < 1.0, trunc, clamped)


def fock_gamma_upper(rho, c):
    """2 c rho / (rho^2 - c^2), valid for rho > c."""
    if not c > 0:
        raise DomainError(f"need c > 0, got {c!r}")
    r = np.asarray(rho, dtype=float)
    if np.any(r <= c):
        raise DomainError(f"need rho > c (pole at rho = c={c!r})")
    out = 2 * c * r / ((r - c) * (r + c))
    return float(out) if np.ndim(out) == 0 else out


def fock_denominator_closed_form(c):
    """int_c^inf exp(-rho^2)(rho^2 - c^2) d rho = (c/2) e^{-c^2} + (sqrt(pi)/4)(1 - 2c^2) erfc(c)."""
    return 0.5 * c * math.exp(-c * c) + 0.25 * math.sqrt(math.pi) * (1 - 2 * c * c) * math.erfc(c)


def fock_criterion(c, tol=tols.QUAD_TOL, trunc=DEFAULT_TRUNCATION):
    """2c(1 - e^{-c^2}) / int_c^inf exp(-rho^2)(rho^2 - c^2) d rho, with its error budget."""
    if not (c > 0 and math.isfinite(c)):
        raise DomainError(f"Fock constant must be positive, got {c!r}")

    def integrand(r):
        return np.exp(-r * r) * (r * r - c * c)

    den = integrate_gaussian_tail(integrand, c, tol, decay_scale=1.0, vectorized=True)
    if den.value <= tol:
        raise DegenerateCriterionError(f"Fock denominator {den.value:.3g} <= tol at c={c!r}")
    closed = fock_denominator_closed_form(c)
    if abs(closed - den.value) > tols.FOCK_CLOSED_FORM_TOL:
        raise ConsistencyError(
            f"Fock denominator: quadrature {den.value!r} vs closed form {closed!r} at c={c!r}"
        )
    numerator = -2.0 * c * math.expm1(-c * c)
    criterion = numerator / den.value
    budget = _quotient_budget(numerator, den)
    return Certificate("fock", c, numerator, den, criterion, budget,
                       criterion + budget < 1.0, trunc, None)


def certify(space, c, tol=tols.QUAD_TOL, trunc=DEFAULT_TRUNCATION):
    """Evaluate the criterion for ``space`` ('bergman' or 'fock') at ``c``."""
    if space == "bergman":
        return bergman_criterion(c, tol, trunc)
    if space == "fock":
        return fock_criterion(c, tol, trunc)
    raise DomainError(f"unknown space {space!r}; expected one of {SPACES}")


def _try_certify(space, c, tol, trunc):
    try:
        return certify(space, c, tol, trunc)
    except DegenerateCriterionError:
        return None


def _passes(cert):
    return cert is not None and cert.passed


def search_max_constant(space, lo, hi, tol=tols.BISECTION_WIDTH, quad_tol=tols.QUAD_TOL,
                        trunc=DEFAULT_TRUNCATION, scan_points=tols.SEARCH_SCAN_POINTS, workers=1):
    """Largest c in [lo, hi] the criterion certifies, to bisection width ``tol``.

    A coarse scan of ``scan_points`` values (endpoints included) must show
    pass/fail as a single pass-then-fail transition; anything else raises
    :class:`NonMonotoneError`, and a scan with no transition raises
    :class:`InvalidBracketError`.  A degenerate denominator counts as a
    failure.
    """
    if space not in SPACES:
        raise DomainError(f"unknown space {space!r}; expected one of {SPACES}")
    if not lo < hi:
        raise InvalidBracketError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    if not tol > 0:
        raise DomainError("bisection width must be positive")
    cs = [float(x) for x in np.linspace(lo, hi, max(2, scan_points))]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            certs = list(pool.map(lambda x: _try_certify(space, x, quad_tol, trunc), cs))
    else:
        certs = [_try_certify(space, x, quad_tol, trunc) for x in cs]
    flags = [_passes(cert) for cert in certs]
    scan = tuple(zip(cs, flags))
    marks = "".join("P" if f else "F" for f in flags)
    if all(flags):
        raise InvalidBracketError(f"{space}: hi={hi!r} passes, so [{lo!r}, {hi!r}] brackets no boundary")
    if not any(flags):
        raise InvalidBracketError(f"{space}: lo={lo!r} does not pass, so [{lo!r}, {hi!r}] brackets no boundary")
    first_fail = flags.index(False)
    if first_fail == 0 or any(flags[first_fail:]):
        raise NonMonotoneError(f"{space}: pass/fail is not monotone along the scan of [{lo!r}, {hi!r}]: {marks}")
    a, b = cs[first_fail - 1], cs[first_fail]
    cert_a, cert_b = certs[first_fail - 1], certs[first_fail]
    iterations = 0
    while b - a > tol:
        mid = 0.5 * (a + b)
        cert = _try_certify(space, mid, quad_tol, trunc)
        iterations += 1
        if _passes(cert):
            a, cert_a = mid, cert
        else:
            b, cert_b = mid, cert
    return SearchResult(space, a, (a, b), iterations, (cert_a, cert_b), scan)
