"""Independent ground truth for the certification pipeline.

* Laurent polynomials (:class:`LaurentFunction`) as concrete test functions.
* Closed-form Bergman and Fock norms of polynomials, with quadrature
  versions to check them against.
* :func:`check_pair`, which tests the maximum principle statement itself
  on a concrete pair ``(f, g)``.
* :func:`cstar_lower_bound`, a brute-force search over Laurent polynomial
  maps of the annulus into the disk.  Every candidate gives a lower bound
  on the Moebius pseudodistance, so the product formula must never fall
  below the best value found.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .annulus import AnnulusDomain, _as_domain, _rotate
from .errors import DomainError
from .metrics import as_complex
from .quadrature import integrate_finite, integrate_gaussian_tail

_EPS = np.finfo(float).eps

MAX_FOCK_DEGREE = 150


@dataclass(frozen=True)
class LaurentFunction:
    """sum_k coeffs[k] z^(min_degree + k).

    Zero coefficients at either end are stripped on construction; the zero
    function is stored as ``coeffs=(0j,)`` with ``min_degree=0``.
    """

    min_degree: int
    coeffs: tuple

    def __post_init__(self):
        cs = [as_complex(a, "coefficient") for a in self.coeffs]
        if not cs:
            raise DomainError("coeffs must be nonempty")
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        if lo == len(cs):
            object.__setattr__(self, "min_degree", 0)
            object.__setattr__(self, "coeffs", (0j,))
            return
        hi = len(cs)
        while cs[hi - 1] == 0:
            hi -= 1
        object.__setattr__(self, "min_degree", int(self.min_degree) + lo)
        object.__setattr__(self, "coeffs", tuple(cs[lo:hi]))

    @classmethod
    def polynomial(cls, coeffs):
        return cls(0, tuple(coeffs))

    @classmethod
    def constant(cls, value):
        return cls(0, (value,))

    @property
    def is_zero(self):
        return self.coeffs == (0j,)

    @property
    def is_polynomial(self):
        return self.min_degree >= 0

    @property
    def degree(self):
        return self.min_degree + len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def coefficient(self, k):
        i = k - self.min_degree
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0j

    def power_coeffs(self):
        """Coefficients of z^0 .. z^degree (polynomials only)."""
        if not self.is_polynomial:
            raise DomainError("negative powers present")
        return [self.coefficient(k) for k in range(self.degree + 1)]

    def __add__(self, other):
        lo = min(self.min_degree, other.min_degree)
        hi = max(self.degree, other.degree)
        return LaurentFunction(lo, tuple(self.coefficient(k) + other.coefficient(k) for k in range(lo, hi + 1)))

    def scaled(self, t):
        return LaurentFunction(self.min_degree, tuple(t * a for a in self.coeffs))

    def __call__(self, z):
        return evaluate(self, z)

    def to_json(self):
        return {"min_degree": self.min_degree, "coeffs": [[a.real, a.imag] for a in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        try:
            md = obj["min_degree"]
            coeffs = [complex(float(re), float(im)) for re, im in obj["coeffs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed Laurent function: {obj!r}") from exc
        if not isinstance(md, int) or isinstance(md, bool):
            raise DomainError(f"min_degree must be an integer, got {md!r}")
        return cls(md, tuple(coeffs))


def evaluate(fn, z):
    """Horner evaluation of a Laurent function at a point or array of points."""
    scalar = np.ndim(z) == 0
    zz = as_complex(z, "z") if scalar else np.asarray(z, dtype=complex)
    if fn.min_degree < 0 and np.any(zz == 0):
        raise DomainError("cannot evaluate negative powers at z = 0")
    acc = 0j if scalar else np.zeros_like(zz)
    for a in reversed(fn.coeffs):
        acc = acc * zz + a
    if fn.min_degree:
        acc = acc * zz ** fn.min_degree
    return complex(acc) if scalar else acc


def bergman_norm_sq(p):
    """(1/pi) int_D |p|^2 dA = sum |a_k|^2 / (k + 1)."""
    return math.fsum(abs(a) ** 2 / (k + 1) for k, a in enumerate(p.power_coeffs()))


def fock_norm_sq(p):
    """int_C |p|^2 exp(-|z|^2) dA = pi sum |a_k|^2 k!."""
    if p.is_polynomial and p.degree > MAX_FOCK_DEGREE:
        raise DomainError(
            f"degree {p.degree} > {MAX_FOCK_DEGREE}: k! overflows, a scaled representation is needed"
        )
    return math.pi * math.fsum(abs(a) ** 2 * math.factorial(k) for k, a in enumerate(p.power_coeffs()))


def _circle_mean_sq(p, r):
    """Mean of |p|^2 on |z| = r by the trapezoid rule (exact for these sample counts)."""
    n = 2 * max(p.degree, 0) + 2
    theta = 2 * np.pi * np.arange(n) / n
    r = np.atleast_1d(np.asarray(r, dtype=float))
    z = r[:, None] * np.exp(1j * theta)[None, :]
    return np.mean(np.abs(evaluate(p, z)) ** 2, axis=1)


def bergman_norm_sq_numeric(p, tol=1e-11):
    """Bergman norm squared as a radial quadrature of circle means."""
    p.power_coeffs()
    return integrate_finite(lambda r: 2.0 * r * _circle_mean_sq(p, r), 0.0, 1.0, tol, vectorized=True)


def fock_norm_sq_numeric(p, tol=1e-12):
    """Fock norm squared as a Gaussian-tail radial quadrature of circle means.

    ``tol`` is relative to the a-priori size bound of the integral
    obtained from the envelope (sum |a_k|)^2 max(1, r)^(2 deg); the
    absolute rounding floor grows with k! so an absolute tolerance is
    unattainable for higher degrees.
    """
    coeffs = p.power_coeffs()
    l1 = math.fsum(abs(a) for a in coeffs)
    envelope = max(2.0 * math.pi * l1 * l1, 1e-300)
    power = 2 * p.degree + 1
    # int_0^inf envelope (1 + r^power) exp(-r^2) dr
    scale = envelope * 0.5 * (math.sqrt(math.pi) + math.gamma(0.5 * (power + 1)))
    return integrate_gaussian_tail(
        lambda r: 2.0 * math.pi * r * _circle_mean_sq(p, r) * np.exp(-r * r),
        0.0, tol * max(1.0, scale), decay_scale=envelope, power=power, vectorized=True,
    )


# ---------------------------------------------------------------------------
# maximum principle on concrete pairs


@dataclass
class PairReport:
    space: str
    c: float
    hypothesis_margin: float
    norm_f_sq: float
    norm_g_sq: float
    conclusion_holds: bool
    samples: int
    notes: list = field(default_factory=list)

    @property
    def hypothesis_holds(self):
        return self.hypothesis_margin >= 0


def _margin(f, g, z):
    af = np.abs(evaluate(f, z))
    ag = np.abs(evaluate(g, z))
    diff = ag - af
    # differences within rounding of the moduli are reported as 0
    diff[np.abs(diff) <= 16 * _EPS * np.maximum(af, ag)] = 0.0
    return float(diff.min())


def _dominance_radius(f, g):
    """Radius beyond which |f| < |g| follows from the coefficients, or None."""
    dg = g.degree
    lead = abs(g.leading) - (abs(f.coefficient(dg)) if f.degree == dg else 0.0)
    if lead <= 0:
        return None
    R = 1.0
    for _ in range(200):
        rest = math.fsum((abs(f.coefficient(k)) + abs(g.coefficient(k))) * R ** (k - dg) for k in range(dg))
        if rest < lead:
            return R
        R *= 2.0
    return None


def check_pair(f, g, c, space="bergman", grid_density=64):
    """Sample the hypothesis |f| <= |g| outside radius c and compare norms.

    Bergman: circles of radii spanning [c, 1] (both boundary circles
    included).  Fock: circles spanning [c, R], where beyond R the
    inequality follows from the coefficients; the behavior at infinity is
    decided exactly from degrees and leading coefficients.
    """
    if not (f.is_polynomial and g.is_polynomial):
        raise DomainError("check_pair needs polynomials")
    if grid_density < 2:
        raise DomainError("grid_density must be at least 2")
    theta = 2 * np.pi * np.arange(grid_density) / grid_density
    notes = []
    if space == "bergman":
        if not 0 < c < 1:
            raise DomainError(f"Bergman radius must lie in (0, 1), got {c!r}")
        radii = np.linspace(c, 1.0, grid_density)
        nf, ng = bergman_norm_sq(f), bergman_norm_sq(g)
    elif space == "fock":
        if not c > 0:
            raise DomainError(f"Fock radius must be positive, got {c!r}")
        nf, ng = fock_norm_sq(f), fock_norm_sq(g)
        at_infinity = f.is_zero or f.degree < g.degree or (
            f.degree == g.degree and abs(f.leading) <= abs(g.leading))
        if at_infinity:
            R = _dominance_radius(f, g) if not f.is_zero else c
            if R is None:
                R = max(4.0 * c, 4.0)
                notes.append(f"equal leading moduli: sampled out to R={R:g} only")
            R = max(R, c)
        else:
            R = max(2.0 * c, 1.0)
            while _margin(f, g, R * np.exp(1j * theta)) >= 0 and R < 1e150:
                R *= 2.0
            notes.append("hypothesis fails near infinity (degree or leading coefficient)")
        radii = np.linspace(c, R, grid_density) if R > c else np.array([c])
    else:
        raise DomainError(f"unknown space {space!r}")
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    margin = _margin(f, g, z)
    if margin < 0:
        notes.append("hypothesis |f| <= |g| fails on the sample grid")
    return PairReport(space, float(c), margin, nf, ng, nf <= ng, int(z.size), notes)


# ---------------------------------------------------------------------------
# brute-force lower bound for the annulus pseudodistance


def _disk_distance(u, v):
    if u == v:
        return 0.0
    return abs(u - v) / abs(1.0 - u.conjugate() * v)


class _Candidates:
    """Laurent polynomials of degree <= d on A(c, 1), normalized to sup |w| = 1 - 1e-6."""

    SUP = 1.0 - 1e-6

    def __init__(self, a, z, c, d, samples):
        self.c = c
        self.d = d
        self.powers = np.arange(-d, d + 1)
        theta = 2 * np.pi * np.arange(samples) / samples
        pts = np.concatenate([np.exp(1j * theta), c * np.exp(1j * theta)])
        self.boundary = pts[:, None] ** self.powers[None, :]
        self.at_a = a ** self.powers.astype(float)
        self.at_z = z ** self.powers.astype(complex)
        self.m = len(self.powers)

    def coeffs(self, x):
        return x[: self.m] + 1j * x[self.m:]

    def _value(self, w, sup):
        if not sup > 0:
            return 0.0
        s = self.SUP / sup
        return _disk_distance(complex(s * (self.at_a @ w)), complex(s * (self.at_z @ w)))

    def objective(self, x):
        w = self.coeffs(x)
        return self._value(w, float(np.abs(self.boundary @ w).max()))

    def refined_sup(self, w):
        """sup |w| on both boundary circles, from dense sampling plus local refinement."""
        best = 0.0
        n = 8192
        theta = 2 * np.pi * np.arange(n) / n
        for r in (1.0, self.c):
            def mod(t):
                return abs(complex(np.exp(1j * t * self.powers) * r ** self.powers.astype(float) @ w))

            vals = np.abs((r * np.exp(1j * theta))[:, None] ** self.powers[None, :] @ w)
            best = max(best, float(vals.max()))
            for i in np.argsort(vals)[-3:]:
                h = 2 * np.pi / n
                res = minimize_scalar(lambda t: -mod(t), bounds=(theta[i] - h, theta[i] + h),
                                      method="bounded", options={"xatol": 1e-12})
                best = max(best, -float(res.fun))
        return best * (1.0 + 4 * _EPS)

    def refined_value(self, x):
        w = self.coeffs(x)
        return self._value(w, self.refined_sup(w))

    def embed(self, x, coarse):
        """Coefficient vector of this family equal to ``x`` from family ``coarse``."""
        out = np.zeros(2 * self.m)
        off = self.d - coarse.d
        out[off: off + coarse.m] = x[: coarse.m]
        out[self.m + off: self.m + off + coarse.m] = x[coarse.m:]
        return out


def _coordinate_search(obj, x, step=0.5, min_step=1e-4):
    fx = obj(x)
    while step >= min_step:
        improved = True
        while improved:
            improved = False
            scale = max(float(np.abs(x).max()), 1e-12)
            for j in range(len(x)):
                for sgn in (1.0, -1.0):
                    y = x.copy()
                    y[j] += sgn * step * scale
                    fy = obj(y)
                    if fy > fx:
                        x, fx = y, fy
                        improved = True
                        break
        step *= 0.5
    return x, fx


def cstar_lower_bound(a, z, dom, degree=3, restarts=20, seed=0, boundary_samples=512,
                      min_step=1e-4):
    """Best pseudodistance d(w(a), w(z)) over normalized Laurent polynomial maps w.

    Each restart runs a chain of coordinate searches over degrees
    1..``degree``, each level started from the previous level's optimum,
    so a chain's value cannot decrease with the degree.  Restart ``i`` draws
    from its own stream seeded by ``(seed, i)``, so adding restarts never
    lowers the result.  Each level's optimum is rescaled with a refined
    boundary maximum before it is scored.
    """
    dom = _as_domain(dom)
    z = as_complex(z, "z")
    a, z = _rotate(a, z)
    if not dom.contains_modulus(a) or not dom.contains_modulus(abs(z)):
        raise DomainError(f"need a and |z| in (c, 1), c={dom.c!r}")
    if degree < 1 or restarts < 1:
        raise DomainError("degree and restarts must be positive")
    if a == z:
        return 0.0
    families = [_Candidates(a, z, dom.c, d, boundary_samples) for d in range(1, degree + 1)]
    best = 0.0
    for i in range(restarts):
        rng = np.random.default_rng([seed, i])
        x = rng.standard_normal(2 * families[0].m)
        prev = None
        for fam in families:
            if prev is not None:
                x = fam.embed(x, prev)
            x, _ = _coordinate_search(fam.objective, x, min_step=min_step)
            best = max(best, fam.refined_value(x))
            prev = fam
    return best
