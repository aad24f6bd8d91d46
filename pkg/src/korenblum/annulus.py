"""Moebius pseudodistance of a circular annulus from its infinite-product
formula.

Three evaluation routes are provided and checked against one another:

* :func:`cstar_symmetric` on the symmetric annulus ``1/R < |z| < R``
  through the product ``f(a, z)``;
* :func:`cstar_annulus` on ``A(c, 1)`` through the product written out in
  those coordinates (the scaling ``z -> z / sqrt(c)`` maps it onto the
  symmetric annulus with ``R = 1 / sqrt(c)``);
* :func:`cstar_circle`, the same-circle case ``z = rho e^{i theta}`` as a
  real product of the factors ``f_n g_n``, evaluated by the compiled kernel.

Every factor of each product has the form ``1 - K q^n`` with ``q = R^-4``
(equivalently ``c^2``).  Since ``|log(1 - u)| <= |u| / (1 - |u|)``, the log
of the discarded tail after ``N`` factors is bounded by a geometric series,
and truncation stops once that bound is below the policy's epsilon.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, NonConvergenceError
from .metrics import as_complex
from .tolerances import TRUNC_EPSILON, TRUNC_MAX_TERMS


@dataclass(frozen=True)
class TruncationPolicy:
    epsilon: float = TRUNC_EPSILON
    max_terms: int = TRUNC_MAX_TERMS

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise DomainError(f"truncation epsilon must be positive, got {self.epsilon!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")

    def refined(self, factor=10.0):
        """Same policy with epsilon divided by ``factor``."""
        return TruncationPolicy(self.epsilon / factor, self.max_terms)


DEFAULT_TRUNCATION = TruncationPolicy()


@dataclass(frozen=True)
class SymmetricAnnulus:
    """The annulus 1/R < |z| < R."""

    R: float

    def __post_init__(self):
        if not (self.R > 1 and math.isfinite(self.R)):
            raise DomainError(f"need R > 1, got {self.R!r}")

    def contains_modulus(self, r):
        return 1.0 / self.R < r < self.R


@dataclass(frozen=True)
class AnnulusDomain:
    """The annulus c < |z| < 1."""

    c: float

    def __post_init__(self):
        if not (0 < self.c < 1):
            raise DomainError(f"need 0 < c < 1, got {self.c!r}")

    def contains_modulus(self, r):
        return self.c < r < 1.0


@dataclass(frozen=True)
class ProductEvaluation:
    value: complex
    truncation_bound: float
    terms_used: int


@dataclass(frozen=True)
class CstarEvaluation:
    """Pseudodistance value with its truncation bound.

    ``clamped`` is set when rounding pushed the value above 1 and it was
    clamped back (the pseudodistance never exceeds 1).
    """

    value: float
    truncation_bound: float
    terms_used: int
    clamped: bool = False


def _as_symmetric(ann):
    return ann if isinstance(ann, SymmetricAnnulus) else SymmetricAnnulus(float(ann))


def _as_domain(dom):
    return dom if isinstance(dom, AnnulusDomain) else AnnulusDomain(float(dom))


def _term_log_bound(ks, q, n):
    total = 0.0
    for k in ks:
        u = k * q**n
        if u >= 1.0:
            return math.inf
        total += u / (1.0 - u)
    return total


def _tail_log_bound(ks, q, n_done):
    """Bound on sum_{m > n_done} |log factor_m| for factors prod_j (1 - u_j q^m)^{+-1}, |u_j| <= k_j."""
    total = 0.0
    qn = q ** (n_done + 1)
    for k in ks:
        u = k * qn
        if u >= 1.0:
            return math.inf
        total += u / ((1.0 - q) * (1.0 - u))
    return total


def _terms_needed(ks, q, trunc, scale=1.0):
    """Smallest N meeting the stopping rule, with the tail bound at N."""
    tail_target = 0.5 * trunc.epsilon / max(1.0, scale)
    for n in range(1, trunc.max_terms + 1):
        if _term_log_bound(ks, q, n) < 0.25 * trunc.epsilon:
            tail = _tail_log_bound(ks, q, n)
            if tail < tail_target:
                return n, tail
    raise NonConvergenceError(
        f"product not converged to epsilon={trunc.epsilon:g} within {trunc.max_terms} terms (q={q:g})"
    )


def _truncated_product(leading, num, den, q, trunc):
    """leading * prod_{n>=1} prod_j (1 - num_j q^n) / prod_k (1 - den_k q^n)."""
    ks = [abs(u) for u in num] + [abs(u) for u in den]
    tail_target = 0.5 * trunc.epsilon
    value = complex(leading)
    for n in range(1, trunc.max_terms + 1):
        qn = q**n
        factor = 1.0 + 0j
        for u in num:
            factor *= 1.0 - u * qn
        for u in den:
            factor /= 1.0 - u * qn
        value *= factor
        if _term_log_bound(ks, q, n) < 0.25 * trunc.epsilon:
            tail = _tail_log_bound(ks, q, n)
            if tail * max(1.0, abs(value)) < tail_target:
                return ProductEvaluation(value, abs(value) * math.expm1(tail), n)
    raise NonConvergenceError(
        f"product not converged to epsilon={trunc.epsilon:g} within {trunc.max_terms} terms (q={q:g})"
    )


def _combine(value, parts, terms):
    """Pseudodistance value from factor evaluations whose relative errors multiply."""
    rel = 1.0
    for p in parts:
        mag = abs(p.value)
        rel *= 1.0 + (p.truncation_bound / mag if mag > 0 else 0.0)
    bound = value * (rel - 1.0)
    clamped = value > 1.0
    return CstarEvaluation(min(value, 1.0), bound, terms, clamped)


def product_f(a, z, ann, trunc=DEFAULT_TRUNCATION):
    """The product f(a, z) attached to the symmetric annulus 1/R < |z| < R."""
    ann = _as_symmetric(ann)
    a = float(a)
    z = as_complex(z, "z")
    if not ann.contains_modulus(a):
        raise DomainError(f"need 1/R < a < R, got a={a!r}, R={ann.R!r}")
    if z == 0:
        raise DomainError("z must be nonzero")
    R2 = ann.R**2
    return _truncated_product(
        1.0 - z / a,
        [z / a, a / z],
        [a * z * R2, R2 / (a * z)],
        ann.R**-4,
        trunc,
    )


def _rotate(a, z):
    """Rotate (a, z) so the base point is real positive."""
    a = as_complex(a, "a")
    if a.imag == 0 and a.real > 0:
        return a.real, z
    if a == 0:
        raise DomainError("base point must be nonzero")
    phase = a.conjugate() / abs(a)
    return abs(a), z * phase


def cstar_symmetric_eval(a, z, ann, trunc=DEFAULT_TRUNCATION):
    ann = _as_symmetric(ann)
    z = as_complex(z, "z")
    a, z = _rotate(a, z)
    r = abs(z)
    if not ann.contains_modulus(a) or not ann.contains_modulus(r):
        raise DomainError(f"need a and |z| in (1/R, R) = ({1 / ann.R!r}, {ann.R!r})")
    outer = product_f(1.0 / a, -r, ann, trunc)
    inner = product_f(a, z, ann, trunc)
    value = abs(outer.value) / (ann.R * r) * abs(inner.value)
    return _combine(value, [outer, inner], max(outer.terms_used, inner.terms_used))


def cstar_symmetric(a, z, ann, trunc=DEFAULT_TRUNCATION):
    """Moebius pseudodistance c*(a, z) of the annulus 1/R < |z| < R."""
    return cstar_symmetric_eval(a, z, ann, trunc).value


def cstar_annulus_eval(rho, z, dom, trunc=DEFAULT_TRUNCATION):
    dom = _as_domain(dom)
    z = as_complex(z, "z")
    rho, z = _rotate(rho, z)
    r = abs(z)
    c = dom.c
    if not dom.contains_modulus(rho) or not dom.contains_modulus(r):
        raise DomainError(f"need rho and |z| in (c, 1) = ({c!r}, 1)")
    leading = (c / r) * (1.0 + rho * r / c) * (1.0 - z / rho)
    num = [-(rho * r / c), -(c / (rho * r)), z / rho, rho / z]
    den = [-(r / (rho * c)), -(rho / (r * c)), rho * z / (c * c), 1.0 / (rho * z)]
    p = _truncated_product(leading, num, den, c * c, trunc)
    return _combine(abs(p.value), [p], p.terms_used)


def cstar_annulus(rho, z, dom, trunc=DEFAULT_TRUNCATION):
    """Moebius pseudodistance c*(rho, z) of the annulus c < |z| < 1."""
    return cstar_annulus_eval(rho, z, dom, trunc).value


def _circle_ks(rho_min, rho_max, c):
    return [rho_max**2 / c, c / rho_min**2, 1.0 / c, 1.0 / c,
            1.0, 1.0, 1.0, 1.0, rho_max**2 / c**2, 1.0 / rho_min**2]


def cstar_circle_eval(rho, theta, dom, trunc=DEFAULT_TRUNCATION):
    dom = _as_domain(dom)
    rho = float(rho)
    if not dom.contains_modulus(rho):
        raise DomainError(f"need c < rho < 1, got rho={rho!r}, c={dom.c!r}")
    n, tail = _terms_needed(_circle_ks(rho, rho, dom.c), dom.c**2, trunc, scale=2.0)
    value = kernels.circle_product(rho, float(theta), dom.c, n)
    clamped = value > 1.0
    return CstarEvaluation(min(value, 1.0), value * math.expm1(tail), n, clamped)


def cstar_circle(rho, theta, dom, trunc=DEFAULT_TRUNCATION):
    """c*(rho, rho e^{i theta}) on A(c, 1) from the real factors f_n g_n."""
    return cstar_circle_eval(rho, theta, dom, trunc).value


def cstar_circle_grid(rho, theta, dom, trunc=DEFAULT_TRUNCATION):
    """Vectorized :func:`cstar_circle`; ``rho`` and ``theta`` broadcast.

    Returns the unclamped values and the relative truncation bound shared
    by the whole grid.
    """
    dom = _as_domain(dom)
    rho = np.asarray(rho, dtype=float)
    if rho.size == 0:
        return np.empty(np.broadcast_shapes(rho.shape, np.shape(theta))), 0.0
    lo, hi = float(rho.min()), float(rho.max())
    if not (dom.c < lo and hi < 1.0):
        raise DomainError(f"all rho must lie in (c, 1), c={dom.c!r}")
    n, tail = _terms_needed(_circle_ks(lo, hi, dom.c), dom.c**2, trunc, scale=2.0)
    return kernels.circle_product(rho, theta, dom.c, n), math.expm1(tail)
