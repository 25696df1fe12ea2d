"""Pure numpy implementations of the hot kernels.

Used when the compiled ``hmtk._ckernels`` extension is unavailable, or when
``HMTK_PURE_PYTHON=1`` is set. Signatures and results match the Cython
versions exactly (up to floating rounding order).
"""

import numpy as np


def eval_fields(h, g, z):
    """Evaluate ``f = h + conj(g)`` together with ``h'`` and ``g'``.

    Parameters
    ----------
    h, g : 1-D complex128 arrays
        Coefficients in increasing degree, each of length >= 1.
    z : 1-D complex128 array
        Evaluation points.

    Returns
    -------
    f, hp, gp : complex128 arrays shaped like ``z``
        ``f(z)``, ``h'(z)`` and ``g'(z)``. The Wirtinger derivatives are
        ``f_z = hp`` and ``f_zbar = conj(gp)``.
    """
    hv, hp = _horner_with_derivative(h, z)
    gv, gp = _horner_with_derivative(g, z)
    return hv + np.conj(gv), hp, gp


def _horner_with_derivative(c, z):
    val = np.full(z.shape, c[-1], dtype=np.complex128)
    der = np.zeros(z.shape, dtype=np.complex128)
    for k in range(len(c) - 2, -1, -1):
        der = der * z + val
        val = val * z + c[k]
    return val, der


def taylor_shift(c, centers, scales):
    """Coefficients of ``p(a + s*z)`` for every (a, s) pair.

    Returns an array of shape ``(len(centers), len(c))``.
    """
    n = len(c)
    m = len(centers)
    out = np.empty((m, n), dtype=np.complex128)
    out[:] = c
    # repeated synthetic division by (z - a)
    for k in range(n - 1):
        for j in range(n - 2, k - 1, -1):
            out[:, j] += centers * out[:, j + 1]
    out *= scales[:, None] ** np.arange(n)
    return out


def chart_moments(h, g, centers):
    """Squared chart oscillation ``(1/pi) int_D |F_a - F_a(0)|^2 dA``.

    ``F_a = f(a + (1-|a|) z)``; by orthogonality of monomials on the disk
    this is ``sum_{k>=1} (|c_k|^2 + |d_k|^2) / (k+1)`` where ``c, d`` are the
    shifted coefficients of ``h`` and ``g``.
    """
    scales = 1.0 - np.abs(centers)
    total = np.zeros(len(centers))
    for c in (h, g):
        if len(c) < 2:
            continue
        shifted = taylor_shift(c, centers, scales)
        k = np.arange(len(c))
        total += (np.abs(shifted[:, 1:]) ** 2 / (k[1:] + 1.0)).sum(axis=1)
    return total
