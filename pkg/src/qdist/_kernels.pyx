"""Compiled row-wise kernels.

Every function takes C-contiguous float64 arrays whose rows are
distributions and reduces along the last axis. ``_kernels_py`` holds the
numpy versions; both must agree to roundoff.
"""
import numpy as np

from libc.math cimport atanh, log, log1p, sqrt, INFINITY

cdef double LN2 = 0.6931471805599453


cdef inline double _jsd_term(double a, double b) noexcept nogil:
    # m * g(u) with m = (a+b)/2, u = (a-b)/(a+b) and
    # g(u) = u*atanh(u) + log1p(-u^2)/2 = sum_k u^(2k) / (2k (2k-1)).
    # Series below |u| = 0.1 (truncation < 1e-16 relative), else two log1p
    # calls, which lose at most ~10 ulp there and beat libm atanh.
    cdef double s = a + b
    cdef double u, w
    if s <= 0.0:
        return 0.0
    u = (a - b) / s
    if u >= 1.0 or u <= -1.0:
        return 0.5 * s * LN2
    w = u * u
    if w < 0.01:
        return 0.5 * s * w * (1.0 / 2 + w * (1.0 / 12 + w * (1.0 / 30 + w * (1.0 / 56 + w * (
            1.0 / 90 + w * (1.0 / 132 + w * (1.0 / 182 + w * (1.0 / 240))))))))
    return 0.25 * s * ((1.0 + u) * log1p(u) + (1.0 - u) * log1p(-u))


cdef inline double _hellinger_term(double a, double b) noexcept nogil:
    cdef double ra = sqrt(a)
    cdef double rb = sqrt(b)
    cdef double d
    if ra + rb <= 0.0:
        return 0.0
    d = (a - b) / (ra + rb)
    return d * d


def entropy_rows(const double[:, ::1] p):
    cdef Py_ssize_t n = p.shape[0], k = p.shape[1], i, j
    out = np.zeros(n)
    cdef double[::1] o = out
    cdef double acc, x
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(k):
                x = p[i, j]
                if x > 0.0:
                    acc -= x * log(x)
            o[i] = acc
    return out


def jsd_rows(const double[:, ::1] p, const double[:, ::1] q):
    cdef Py_ssize_t n = p.shape[0], k = p.shape[1], i, j
    if q.shape[0] != n or q.shape[1] != k:
        raise ValueError("shape mismatch")
    out = np.zeros(n)
    cdef double[::1] o = out
    cdef double acc
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(k):
                acc += _jsd_term(p[i, j], q[i, j])
            o[i] = acc
    return out


def hellinger_sq_rows(const double[:, ::1] p, const double[:, ::1] q):
    cdef Py_ssize_t n = p.shape[0], k = p.shape[1], i, j
    if q.shape[0] != n or q.shape[1] != k:
        raise ValueError("shape mismatch")
    out = np.zeros(n)
    cdef double[::1] o = out
    cdef double acc
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(k):
                acc += _hellinger_term(p[i, j], q[i, j])
            acc *= 0.5
            o[i] = 1.0 if acc > 1.0 else acc
    return out


def bhattacharyya_rows(const double[:, ::1] p, const double[:, ::1] q):
    cdef Py_ssize_t n = p.shape[0], k = p.shape[1], i, j
    if q.shape[0] != n or q.shape[1] != k:
        raise ValueError("shape mismatch")
    out = np.zeros(n)
    cdef double[::1] o = out
    cdef double acc
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(k):
                acc += sqrt(p[i, j] * q[i, j])
            o[i] = 1.0 if acc > 1.0 else acc
    return out


def kl_rows(const double[:, ::1] p, const double[:, ::1] q):
    cdef Py_ssize_t n = p.shape[0], k = p.shape[1], i, j
    if q.shape[0] != n or q.shape[1] != k:
        raise ValueError("shape mismatch")
    out = np.zeros(n)
    cdef double[::1] o = out
    cdef double acc, a, b
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(k):
                a = p[i, j]
                b = q[i, j]
                if a > 0.0:
                    if b <= 0.0:
                        acc = INFINITY
                        break
                    acc += a * log(a / b)
            o[i] = 0.0 if acc < 0.0 else acc
    return out


def jsd_gram(const double[:, ::1] x):
    cdef Py_ssize_t m = x.shape[0], k = x.shape[1], a, b, j
    out = np.zeros((m, m))
    cdef double[:, ::1] o = out
    cdef double acc
    with nogil:
        for a in range(m):
            for b in range(a + 1, m):
                acc = 0.0
                for j in range(k):
                    acc += _jsd_term(x[a, j], x[b, j])
                o[a, b] = acc
                o[b, a] = acc
    return out
