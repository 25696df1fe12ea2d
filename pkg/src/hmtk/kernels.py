"""Backend selection for the hot kernels.

The compiled extension is preferred; the numpy fallback is used when the
extension was not built or ``HMTK_PURE_PYTHON=1`` is set. ``BACKEND`` names
the active implementation.
"""

import os

import numpy as np

from . import _kernels_py

try:
    if os.environ.get("HMTK_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python backend forced")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"


def _c(a):
    return np.ascontiguousarray(a, dtype=np.complex128).ravel()


def eval_fields(h, g, z, backend=None):
    """Return ``(f, h', g')`` at the points ``z`` (any shape)."""
    impl = _pick(backend)
    z = np.asarray(z, dtype=np.complex128)
    f, hp, gp = impl.eval_fields(_c(h), _c(g), _c(z))
    shape = z.shape
    return (np.asarray(f).reshape(shape), np.asarray(hp).reshape(shape),
            np.asarray(gp).reshape(shape))


def taylor_shift(c, centers, scales, backend=None):
    impl = _pick(backend)
    return np.asarray(impl.taylor_shift(
        _c(c), _c(centers),
        np.ascontiguousarray(scales, dtype=np.float64).ravel()))


def chart_moments(h, g, centers, backend=None):
    impl = _pick(backend)
    centers = np.asarray(centers, dtype=np.complex128)
    out = impl.chart_moments(_c(h), _c(g), _c(centers))
    return np.asarray(out).reshape(centers.shape)


def _pick(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _kernels_py
    if backend == "cython":
        if BACKEND != "cython":
            raise ImportError("compiled kernels are not available")
        return _impl
    raise ValueError(f"unknown backend {backend!r}")
