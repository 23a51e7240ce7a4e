"""Backend selection for the hot loops (Sturm bisection, Numerov marching).

The compiled extension ``wsnu._kernels`` is used when it was built; otherwise
the pure-Python twin in ``wsnu._kernels_py`` is used. Setting the environment
variable ``WSNU_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("WSNU_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _kernels_py


def available_backends():
    return ["cython", "python"] if _compiled is not None else ["python"]


def get_backend(name=None):
    """Return the kernel module for ``name`` (``None`` means the active one)."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not available in this build")
        return _compiled
    raise ValueError(f"unknown kernel backend {name!r}")


def _as_array(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def sturm_count(d, e2, x, backend=None):
    mod = get_backend(backend)
    if mod is _kernels_py:
        return mod.sturm_count(list(map(float, d)), list(map(float, e2)), float(x))
    return mod.sturm_count(_as_array(d), _as_array(e2), float(x))


def bisect_eigenvalue(d, e2, k, lo, hi, maxiter=200, backend=None):
    mod = get_backend(backend)
    if mod is _kernels_py:
        return mod.bisect_eigenvalue(list(map(float, d)), list(map(float, e2)), int(k), float(lo), float(hi), maxiter)
    return mod.bisect_eigenvalue(_as_array(d), _as_array(e2), int(k), float(lo), float(hi), maxiter)


def numerov_march(g, h, i0, i_end, backend=None):
    mod = get_backend(backend)
    if mod is _kernels_py:
        return mod.numerov_march(list(map(float, g)), float(h), int(i0), int(i_end))
    return mod.numerov_march(_as_array(g), float(h), int(i0), int(i_end))
