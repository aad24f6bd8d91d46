"""Backend selection for the hot numerical kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the numpy versions in ``_pykernels`` are used.  Setting the environment
variable ``KORENBLUM_KERNELS=python`` forces the numpy backend.

The public wrappers accept scalars or arrays (broadcast together) and
return a float for all-scalar input, an array otherwise.
"""

import os

import numpy as np

from . import _pykernels

_backend = _pykernels
if os.environ.get("KORENBLUM_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as _backend
    except ImportError:
        pass

BACKEND = _backend.NAME


def available_backends():
    """Names of the backends importable in this environment."""
    names = ["python"]
    try:
        from . import _ckernels  # noqa: F401
        names.append("cython")
    except ImportError:
        pass
    return names


def get_backend(name=None):
    if name is None:
        return _backend
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


def _flat(*args):
    scalar = all(np.ndim(a) == 0 for a in args)
    arrs = np.broadcast_arrays(*[np.asarray(a, dtype=float) for a in args])
    shape = arrs[0].shape
    return scalar, shape, [np.ascontiguousarray(a.ravel()) for a in arrs]


def _finish(out, scalar, shape):
    if scalar:
        return float(out[0])
    return out.reshape(shape)


def f_bound(rho, c, backend=None):
    scalar, shape, (r,) = _flat(rho)
    return _finish(get_backend(backend).f_bound(r, float(c)), scalar, shape)


def bergman_integrand(rho, c, backend=None):
    scalar, shape, (r,) = _flat(rho)
    return _finish(get_backend(backend).bergman_integrand(r, float(c)), scalar, shape)


def circle_product(rho, theta, c, nterms, backend=None):
    scalar, shape, (r, t) = _flat(rho, theta)
    return _finish(get_backend(backend).circle_product(r, t, float(c), int(nterms)), scalar, shape)


def tedious_excess(rho, theta, c, backend=None):
    scalar, shape, (r, t) = _flat(rho, theta)
    return _finish(get_backend(backend).tedious_excess(r, t, float(c)), scalar, shape)
