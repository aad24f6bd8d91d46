"""Registry of every checkable claim, for ``korenblum verify``.

The bound-chain claims take a :class:`~korenblum.bounds.GridSpec`; the
disk-metric identities are randomized and take a sample count and seed.
"""

import math
from dataclasses import replace

import numpy as np

from . import bounds, metrics, tolerances as tols
from .bounds import DEFAULT_GRIDS, ClaimReport

GRID_CLAIMS = {
    "fn-bound": bounds.verify_fn_bound,
    "gn-theta": bounds.verify_gn_theta_max,
    "fg-product": bounds.verify_fg_product,
    "tail": bounds.verify_tail_bound,
    "tedious": bounds.verify_tedious_bound,
    "f-dominates": bounds.verify_f_domination,
}


def _disk_samples(rng, n, radius):
    r = radius * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


def _sampled_report(claim_id, values, points, tol):
    idx = int(np.argmax(values))
    worst = float(values[idx])
    return ClaimReport(claim_id, None, worst, points[idx], worst <= tol, tol, len(values))


def verify_disk_symmetry(samples=10_000, seed=0):
    """d(a, b) == d(b, a) exactly, and d(0, b) == |b|."""
    rng = np.random.default_rng([seed, 1])
    a = _disk_samples(rng, samples, tols.DISK_TEST_RADIUS)
    b = _disk_samples(rng, samples, tols.DISK_TEST_RADIUS)
    viol = np.array([
        max(abs(metrics.pseudo_distance(x, y) - metrics.pseudo_distance(y, x)),
            abs(metrics.pseudo_distance(0, y) - abs(y)) - tols.ORIGIN_DISTANCE_TOL)
        for x, y in zip(a, b)
    ])
    pts = [{"alpha": [x.real, x.imag], "beta": [y.real, y.imag]} for x, y in zip(a, b)]
    return _sampled_report("disk-symmetry", viol, pts, tols.SYMMETRY_TOL)


def verify_ratio_identity(samples=10_000, seed=0):
    rng = np.random.default_rng([seed, 2])
    a = _disk_samples(rng, samples, tols.DISK_TEST_RADIUS)
    b = _disk_samples(rng, samples, tols.DISK_TEST_RADIUS)
    viol = np.array([metrics.ratio_identity_residual(x, y) for x, y in zip(a, b)])
    pts = [{"alpha": [x.real, x.imag], "beta": [y.real, y.imag]} for x, y in zip(a, b)]
    return _sampled_report("ratio-identity", viol, pts, tols.RATIO_IDENTITY_TOL)


def verify_square_gap(samples=100_000, seed=0):
    """2|a^2 - ab| >= |a|^2 - |b|^2; the violation is the negated gap."""
    rng = np.random.default_rng([seed, 3])
    a = _disk_samples(rng, samples, 10.0)
    b = _disk_samples(rng, samples, 10.0)
    viol = np.array([-metrics.square_difference_gap(x, y) for x, y in zip(a, b)])
    pts = [{"alpha": [x.real, x.imag], "beta": [y.real, y.imag]} for x, y in zip(a, b)]
    return _sampled_report("square-gap", viol, pts, tols.SQUARE_GAP_TOL)


def verify_quotient_identity(samples=10_000, seed=0):
    rng = np.random.default_rng([seed, 4])
    g = np.exp(rng.uniform(math.log(0.5), math.log(2.0), samples)) * np.exp(2j * np.pi * rng.random(samples))
    w = _disk_samples(rng, samples, tols.DISK_TEST_RADIUS)
    wr = _disk_samples(rng, samples, tols.DISK_TEST_RADIUS)
    f = w * g
    keep = np.abs(f) < np.abs(g)
    viol = np.array([metrics.quotient_identity_residual(x, y, u) for x, y, u in zip(f[keep], g[keep], wr[keep])])
    pts = [{"f": [x.real, x.imag], "g": [y.real, y.imag], "omega_rho": [u.real, u.imag]}
           for x, y, u in zip(f[keep], g[keep], wr[keep])]
    return _sampled_report("quotient-identity", viol, pts, tols.QUOTIENT_IDENTITY_TOL)


def verify_circle_mean(samples=1_000, seed=0):
    """Circle means of |p|^2 are nondecreasing in the radius (subharmonicity)."""
    rng = np.random.default_rng([seed, 5])
    viol = np.empty(samples)
    pts = []
    for i in range(samples):
        deg = int(rng.integers(0, 9))
        coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        r1, r2 = np.sort(rng.uniform(0.0, 1.0, 2))
        viol[i] = metrics.circle_mean_sq(coeffs, r1) - metrics.circle_mean_sq(coeffs, r2)
        pts.append({"degree": deg, "r1": float(r1), "r2": float(r2)})
    return _sampled_report("circle-mean", viol, pts, 0.0)


SAMPLED_CLAIMS = {
    "disk-symmetry": verify_disk_symmetry,
    "ratio-identity": verify_ratio_identity,
    "square-gap": verify_square_gap,
    "quotient-identity": verify_quotient_identity,
    "circle-mean": verify_circle_mean,
}

ALL_CLAIMS = tuple(GRID_CLAIMS) + tuple(SAMPLED_CLAIMS)


def run_claim(name, c_values=None, rho_steps=None, theta_steps=None, n_max=None,
              samples=None, seed=0):
    """Run one claim, overriding its default grid or sample count."""
    if name in GRID_CLAIMS:
        grid = DEFAULT_GRIDS[name]
        changes = {}
        if c_values:
            changes["c_values"] = tuple(c_values)
        if rho_steps is not None:
            changes["rho_steps"] = rho_steps
        if theta_steps is not None:
            changes["theta_steps"] = theta_steps
        if n_max is not None:
            changes["n_range"] = (grid.n_range[0], n_max)
        return GRID_CLAIMS[name](replace(grid, **changes))
    if name in SAMPLED_CLAIMS:
        kwargs = {"seed": seed}
        if samples is not None:
            kwargs["samples"] = samples
        return SAMPLED_CLAIMS[name](**kwargs)
    raise KeyError(name)
