"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise the NumPy
versions are used.  Setting ``THFACTOR_PURE_PYTHON=1`` forces the fallback.
"""

import os

import numpy as np

from . import _kernels_py

if os.environ.get("THFACTOR_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "numpy"


def _impl(name, backend=None):
    if backend is None:
        backend = BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return getattr(_compiled, name)
    return getattr(_kernels_py, name)


def nudft(theta, weighted, n_min, n_max, backend=None):
    theta = np.ascontiguousarray(theta, dtype=float)
    weighted = np.ascontiguousarray(weighted, dtype=complex)
    return _impl("nudft", backend)(theta, weighted, int(n_min), int(n_max))


def phase_walk(values, backend=None):
    values = np.ascontiguousarray(values, dtype=complex)
    return _impl("phase_walk", backend)(values)


def jump_product(theta, locations, betas, backend=None):
    theta = np.ascontiguousarray(np.atleast_1d(theta), dtype=float)
    locations = np.ascontiguousarray(locations, dtype=float)
    betas = np.ascontiguousarray(betas, dtype=complex)
    return _impl("jump_product", backend)(theta, locations, betas)
