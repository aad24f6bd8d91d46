"""The factors f_n and g_n, the closed bound F(rho, c) on the same-circle
pseudodistance of A(c, 1), the resulting bound on the extremal quotient,
and grid verifiers for each inequality in the chain leading to F.

All factor functions accept numpy arrays and broadcast.  The verifiers
return :class:`ClaimReport` objects; tolerances come from
:mod:`korenblum.tolerances`.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels, tolerances as tols
from .annulus import DEFAULT_TRUNCATION, cstar_circle_grid
from .errors import DomainError

UNBOUNDED = math.inf


def _check_region(rho, c):
    rho = np.asarray(rho, dtype=float)
    if not (0 < c < 1):
        raise DomainError(f"need 0 < c < 1, got c={c!r}")
    if rho.size and not (np.all(rho > c) and np.all(rho < 1)):
        raise DomainError(f"need c < rho < 1 (c={c!r})")
    return rho


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def f_n_factor(rho, c, n):
    """f_n(rho, c) = (1 + rho^2 c^{2n-1})(1 + rho^-2 c^{2n+1}) / (1 + c^{2n-1})^2."""
    rho = _check_region(rho, c)
    r2 = rho * rho
    return _out((1 + r2 * c ** (2 * n - 1)) * (1 + c ** (2 * n + 1) / r2) / (1 + c ** (2 * n - 1)) ** 2)


def g_n_factor(rho, c, theta, n):
    """g_n(rho, c, theta); depends on theta only through cos(theta)."""
    rho = _check_region(rho, c)
    r2 = rho * rho
    cos_t = np.cos(theta)
    a = c ** (2 * n)
    b = r2 * c ** (2 * n - 2)
    d = a / r2
    den_b = 1 - 2 * b * cos_t + b * b
    den_d = 1 - 2 * d * cos_t + d * d
    if np.any(den_b <= 0) or np.any(den_d <= 0):
        raise DomainError("g_n denominator vanishes")
    return _out((1 - 2 * a * cos_t + a * a) / np.sqrt(den_b * den_d))


def g_n_at_zero(rho, c, n):
    """g_n(rho, c, 0) = (1 - c^{2n})^2 / ((1 - rho^2 c^{2n-2})(1 - rho^-2 c^{2n}))."""
    rho = _check_region(rho, c)
    r2 = rho * rho
    return _out((1 - c ** (2 * n)) ** 2 / ((1 - r2 * c ** (2 * n - 2)) * (1 - c ** (2 * n) / r2)))


def F_bound(rho, c):
    """Closed-form bound F(rho, c) on sup_theta c*(rho, rho e^{i theta}); may exceed 1."""
    rho = _check_region(rho, c)
    return kernels.f_bound(rho, c)


def gamma_upper(rho, c):
    """F / sqrt(1 - F^2), or :data:`UNBOUNDED` when F(rho, c) >= 1."""
    return gamma_from_F(F_bound(rho, c))


def gamma_from_F(F):
    F = np.asarray(F, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(F < 1, F / np.sqrt((1 - F) * (1 + F)), UNBOUNDED)
    return _out(out)


# ---------------------------------------------------------------------------
# claim verifiers


@dataclass(frozen=True)
class GridSpec:
    c_values: tuple = (0.05, 0.15, 0.21, 0.24)
    rho_steps: int = 100
    theta_steps: int = 1
    n_range: tuple = (1, 10)

    def __post_init__(self):
        object.__setattr__(self, "c_values", tuple(float(c) for c in self.c_values))
        object.__setattr__(self, "n_range", tuple(int(n) for n in self.n_range))
        if any(not (0 < c < 1) for c in self.c_values):
            raise DomainError("grid c values must lie in (0, 1)")
        if self.rho_steps < 1 or self.theta_steps < 1:
            raise DomainError("grid step counts must be positive")

    def rhos(self, c):
        return np.linspace(c, 1.0, self.rho_steps + 2)[1:-1]

    def thetas(self):
        # cos is even, so [0, pi] covers the full circle
        if self.theta_steps == 1:
            return np.zeros(1)
        return np.linspace(0.0, math.pi, self.theta_steps)

    def ns(self):
        return range(self.n_range[0], self.n_range[1] + 1)


@dataclass
class ClaimReport:
    claim_id: str
    grid: GridSpec | None
    max_violation: float
    worst_point: dict | None
    passed: bool
    tolerance: float
    points: int = 0
    low_density: bool = False
    notes: list = field(default_factory=list)


DEFAULT_GRIDS = {
    "fn-bound": GridSpec(),
    "gn-theta": GridSpec(theta_steps=180),
    "fg-product": GridSpec(c_values=tuple(np.round(np.linspace(0.005, 0.245, 49), 6)), rho_steps=1,
                           n_range=(1, 50)),
    "tail": GridSpec(n_range=(6, 6)),
    "tedious": GridSpec(c_values=(0.1, 0.21, 0.24), rho_steps=400, theta_steps=720, n_range=(1, 5)),
    "f-dominates": GridSpec(c_values=(0.1, 0.21, 0.24), rho_steps=100, theta_steps=720),
}


class _Worst:
    """Running maximum of a violation array with its location."""

    def __init__(self):
        self.value = -math.inf
        self.point = None
        self.count = 0

    def update(self, violation, point_of):
        violation = np.asarray(violation)
        if violation.size == 0:
            return
        self.count += violation.size
        idx = int(np.argmax(violation))
        v = float(violation.flat[idx])
        if v > self.value:
            self.value = v
            self.point = point_of(np.unravel_index(idx, violation.shape))

    def report(self, claim_id, grid, tol, uses_theta=False):
        if self.count == 0:
            return ClaimReport(claim_id, grid, 0.0, None, True, tol, 0,
                               notes=["empty grid: nothing to check"])
        low = grid is not None and (
            grid.rho_steps < tols.LOW_DENSITY_RHO
            or (uses_theta and grid.theta_steps < tols.LOW_DENSITY_THETA)
        )
        notes = ["low-density grid"] if low else []
        return ClaimReport(claim_id, grid, self.value, self.point, self.value <= tol, tol,
                           self.count, low, notes)


def verify_fn_bound(grid=None):
    """f_n(rho, c) <= (1 + c^{2n+1}) / (1 + c^{2n-1}) on the grid."""
    grid = grid or DEFAULT_GRIDS["fn-bound"]
    worst = _Worst()
    for c in grid.c_values:
        rhos = grid.rhos(c)
        for n in grid.ns():
            viol = f_n_factor(rhos, c, n) - (1 + c ** (2 * n + 1)) / (1 + c ** (2 * n - 1))
            worst.update(viol, lambda i, c=c, n=n, rhos=rhos: {"rho": float(rhos[i[0]]), "theta": 0.0, "c": c, "n": n})
    return worst.report("fn-bound", grid, tols.FN_BOUND_TOL)


def verify_gn_theta_max(grid=None):
    """g_n(rho, c, theta) <= g_n(rho, c, 0) <= (1 - c^{2n}) / (1 - c^{2n-2}).

    Violations are measured relative to g_n(rho, c, 0): near rho = 1 with
    n = 1 both sides grow like 1 / (1 - rho^2) and the absolute rounding
    error grows with them.  The second inequality is vacuous for n = 1
    (its right side is infinite).
    """
    grid = grid or DEFAULT_GRIDS["gn-theta"]
    worst = _Worst()
    thetas = grid.thetas()
    for c in grid.c_values:
        rhos = grid.rhos(c)
        R, T = np.meshgrid(rhos, thetas, indexing="ij")
        for n in grid.ns():
            g0 = g_n_at_zero(rhos, c, n)
            viol = g_n_factor(R, c, T, n) / g0[:, None] - 1.0
            if n > 1:
                second = 1.0 - (1 - c ** (2 * n)) / (1 - c ** (2 * n - 2)) / g0
                viol = np.maximum(viol, second[:, None])
            worst.update(viol, lambda i, c=c, n=n, rhos=rhos: {
                "rho": float(rhos[i[0]]), "theta": float(thetas[i[1]]), "c": c, "n": n})
    return worst.report("gn-theta", grid, tols.GN_THETA_TOL, uses_theta=True)


def fg_ratio(c, n):
    """(1 + c^{2n+1})(1 - c^{2n+2}) / ((1 + c^{2n-1})(1 - c^{2n}))."""
    return (1 + c ** (2 * n + 1)) * (1 - c ** (2 * n + 2)) / ((1 + c ** (2 * n - 1)) * (1 - c ** (2 * n)))


def fg_ratio_threshold():
    """Largest c for which fg_ratio(c, n) <= 1 holds for every n >= 1.

    Writing x = c^{2n-1}, the ratio is at most 1 iff
    x c (1 + c^2) <= 1 - c; the binding case is n = 1 (x = c), giving the
    positive root of c^4 + c^2 + c - 1.
    """
    roots = np.roots([1.0, 0.0, 1.0, 1.0, -1.0])
    return float(min(r.real for r in roots if abs(r.imag) < 1e-12 and 0 < r.real < 1))


def verify_fg_product(grid=None):
    """fg_ratio(c, n) <= 1 over the grid's c values and n range."""
    grid = grid or DEFAULT_GRIDS["fg-product"]
    worst = _Worst()
    ns = np.arange(grid.n_range[0], grid.n_range[1] + 1)
    for c in grid.c_values:
        viol = fg_ratio(c, ns) - 1.0
        worst.update(viol, lambda i, c=c: {"rho": None, "theta": 0.0, "c": c, "n": int(ns[i[0]])})
    rep = worst.report("fg-product", grid, tols.FG_PRODUCT_TOL)
    rep.low_density = False
    rep.notes = [n for n in rep.notes if n != "low-density grid"]
    return rep


def verify_tail_bound(grid=None, terms=64):
    """prod_{n>=6} f_n g_n(theta=0) <= (1 - c^12) / (1 - c^10), tail truncated at ``terms`` factors."""
    grid = grid or DEFAULT_GRIDS["tail"]
    worst = _Worst()
    start = grid.n_range[0]
    for c in grid.c_values:
        rhos = grid.rhos(c)
        tail = np.ones_like(rhos)
        for n in range(start, start + terms):
            tail *= f_n_factor(rhos, c, n) * g_n_at_zero(rhos, c, n)
        bound = (1 - c ** (2 * start)) / (1 - c ** (2 * start - 2))
        worst.update(tail - bound, lambda i, c=c, rhos=rhos: {"rho": float(rhos[i[0]]), "theta": 0.0, "c": c, "n": start})
    return worst.report("tail", grid, tols.TAIL_BOUND_TOL)


def verify_tedious_bound(grid=None):
    """sqrt(2(1 - cos t)) prod_{n<=5} g_n(t) <= 2 prod_{n<=5} g_n(pi), dense (rho, theta) scan."""
    grid = grid or DEFAULT_GRIDS["tedious"]
    worst = _Worst()
    thetas = grid.thetas()
    for c in grid.c_values:
        rhos = grid.rhos(c)
        R, T = np.meshgrid(rhos, thetas, indexing="ij")
        viol = kernels.tedious_excess(R, T, c)
        worst.update(viol, lambda i, c=c, rhos=rhos: {"rho": float(rhos[i[0]]), "theta": float(thetas[i[1]]), "c": c, "n": 5})
    return worst.report("tedious", grid, tols.TEDIOUS_TOL, uses_theta=True)


def verify_f_domination(grid=None, trunc=DEFAULT_TRUNCATION):
    """F(rho, c) >= sup_theta c*(rho, rho e^{i theta}): the bound chain end to end."""
    grid = grid or DEFAULT_GRIDS["f-dominates"]
    worst = _Worst()
    thetas = grid.thetas()
    for c in grid.c_values:
        rhos = grid.rhos(c)
        vals, _ = cstar_circle_grid(rhos[:, None], thetas[None, :], c, trunc)
        viol = vals - F_bound(rhos, c)[:, None]
        worst.update(viol, lambda i, c=c, rhos=rhos: {"rho": float(rhos[i[0]]), "theta": float(thetas[i[1]]), "c": c, "n": None})
    return worst.report("f-dominates", grid, tols.F_DOMINATION_TOL, uses_theta=True)
