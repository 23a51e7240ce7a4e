# cython: language_level=3
"""Compiled twins of the routines in ``_kernels_py``."""

from libc.math cimport fabs

cdef double _PIVMIN = 1e-300
cdef double _BIG = 1e150
cdef double _SHRINK = 1e-150


cdef Py_ssize_t _sturm(const double[::1] d, const double[::1] e2, double x) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i, count = 0
    cdef double piv = d[0] - x
    if piv == 0.0:
        piv = _PIVMIN
    if piv < 0.0:
        count += 1
    for i in range(1, n):
        piv = d[i] - x - e2[i - 1] / piv
        if piv == 0.0:
            piv = _PIVMIN
        if piv < 0.0:
            count += 1
    return count


def sturm_count(const double[::1] d, const double[::1] e2, double x):
    return _sturm(d, e2, x)


def bisect_eigenvalue(const double[::1] d, const double[::1] e2, Py_ssize_t k,
                      double lo, double hi, int maxiter=200):
    cdef int it
    cdef double mid
    with nogil:
        for it in range(maxiter):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if _sturm(d, e2, mid) > k:
                hi = mid
            else:
                lo = mid
    return 0.5 * (lo + hi)


def numerov_march(const double[::1] g, double h, Py_ssize_t i0, Py_ssize_t i_end):
    cdef Py_ssize_t step = 1 if i_end > i0 else -1
    cdef double c = h * h / 12.0
    cdef double u_prev = 0.0, u_cur = h, u_next, a_prev
    cdef Py_ssize_t i = i0 + step
    cdef long nodes = 0
    with nogil:
        while i != i_end:
            if u_prev == 0.0:
                a_prev = 0.0
            else:
                a_prev = (1.0 + c * g[i - step]) * u_prev
            u_next = (2.0 * (1.0 - 5.0 * c * g[i]) * u_cur - a_prev) / (1.0 + c * g[i + step])
            if ((u_next < 0.0) != (u_cur < 0.0)) and u_next != 0.0:
                nodes += 1
            u_prev = u_cur
            u_cur = u_next
            if fabs(u_cur) > _BIG:
                u_prev *= _SHRINK
                u_cur *= _SHRINK
            i += step
    return u_prev, u_cur, nodes
