"""Closed-form integrals shared by the quadrature tests and the acceptance suite."""

import math

import numpy as np
from scipy.special import erfc

SQRT_PI = math.sqrt(math.pi)


def fock_denominator_oracle(c):
    # int_c^inf exp(-r^2) (r^2 - c^2) dr, integrated by parts
    return 0.5 * c * math.exp(-c * c) + 0.25 * SQRT_PI * (1 - 2 * c * c) * float(erfc(c))


# (name, integrand, a, b, exact); b = None means [a, inf) with Gaussian decay
FINITE_BATTERY = [
    ("x", lambda x: x, 0.0, 1.0, 0.5),
    ("sin", np.sin, 0.0, math.pi, 2.0),
    ("exp", np.exp, 0.0, 1.0, math.e - 1),
    ("1/(1+x^2)", lambda x: 1 / (1 + x * x), 0.0, 1.0, math.pi / 4),
    ("sqrt", np.sqrt, 0.0, 1.0, 2 / 3),
    ("log", lambda x: np.log(x), 1.0, 2.0, 2 * math.log(2) - 1),
    ("cos^2 on [0,10]", lambda x: np.cos(x) ** 2, 0.0, 10.0, 5 + math.sin(20) / 4),
    ("x^9", lambda x: x**9, -1.0, 2.0, (2**10 - 1) / 10),
    ("clamped 1 on [0.5,1]", lambda x: np.where(x < 0.5, 0.0, 1.0), 0.0, 1.0, 0.5),
    ("peak", lambda x: 1 / (1e-2 + (x - 0.3) ** 2), 0.0, 1.0, 10 * (math.atan(7) + math.atan(3))),
]

TAIL_BATTERY = [
    ("exp(-r^2)", lambda r: np.exp(-r * r), 0.0, SQRT_PI / 2, 0),
    ("r^2 exp(-r^2)", lambda r: r * r * np.exp(-r * r), 0.0, SQRT_PI / 4, 2),
    ("fock denominator c=0.54", lambda r: np.exp(-r * r) * (r * r - 0.54**2), 0.54,
     fock_denominator_oracle(0.54), 2),
]
