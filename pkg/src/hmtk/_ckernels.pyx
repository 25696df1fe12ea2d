# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``hmtk._kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def eval_fields(const double complex[::1] h, const double complex[::1] g,
                const double complex[::1] z):
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t nh = h.shape[0]
    cdef Py_ssize_t ng = g.shape[0]
    f_arr = np.empty(n, dtype=np.complex128)
    hp_arr = np.empty(n, dtype=np.complex128)
    gp_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] f = f_arr
    cdef double complex[::1] hp = hp_arr
    cdef double complex[::1] gp = gp_arr
    cdef Py_ssize_t i, k
    cdef double complex zi, hv, hd, gv, gd
    for i in range(n):
        zi = z[i]
        hv = h[nh - 1]
        hd = 0
        for k in range(nh - 2, -1, -1):
            hd = hd * zi + hv
            hv = hv * zi + h[k]
        gv = g[ng - 1]
        gd = 0
        for k in range(ng - 2, -1, -1):
            gd = gd * zi + gv
            gv = gv * zi + g[k]
        f[i] = hv + gv.conjugate()
        hp[i] = hd
        gp[i] = gd
    return f_arr, hp_arr, gp_arr


def taylor_shift(const double complex[::1] c, const double complex[::1] centers,
                 const double[::1] scales):
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t m = centers.shape[0]
    out_arr = np.empty((m, n), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef double complex a
    cdef double s, sp
    for i in range(m):
        a = centers[i]
        for j in range(n):
            out[i, j] = c[j]
        for k in range(n - 1):
            for j in range(n - 2, k - 1, -1):
                out[i, j] = out[i, j] + a * out[i, j + 1]
        s = scales[i]
        sp = 1.0
        for j in range(n):
            out[i, j] = out[i, j] * sp
            sp *= s
    return out_arr


cdef double _shifted_moment(const double complex[::1] c, double complex a,
                            double s, double complex[::1] work) nogil:
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t j, k
    cdef double total = 0.0
    cdef double sp
    cdef double complex v
    if n < 2:
        return 0.0
    for j in range(n):
        work[j] = c[j]
    for k in range(n - 1):
        for j in range(n - 2, k - 1, -1):
            work[j] = work[j] + a * work[j + 1]
    sp = s
    for j in range(1, n):
        v = work[j] * sp
        total += (v.real * v.real + v.imag * v.imag) / (j + 1.0)
        sp *= s
    return total


def chart_moments(const double complex[::1] h, const double complex[::1] g,
                  const double complex[::1] centers):
    cdef Py_ssize_t m = centers.shape[0]
    cdef Py_ssize_t width = max(h.shape[0], g.shape[0])
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double complex[::1] work = np.empty(width, dtype=np.complex128)
    cdef Py_ssize_t i
    cdef double complex a
    cdef double s
    for i in range(m):
        a = centers[i]
        s = 1.0 - abs(a)
        out[i] = _shifted_moment(h, a, s, work) + _shifted_moment(g, a, s, work)
    return out_arr
