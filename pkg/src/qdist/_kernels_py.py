"""Pure numpy kernels, used when the compiled extension is unavailable.

Same contract as the Cython module: rows are distributions, reductions run
along the last axis. Inputs may carry extra leading axes.
"""

import numpy as np

LN2 = np.log(2.0)


_SERIES = 1.0 / np.array([240.0, 182.0, 132.0, 90.0, 56.0, 30.0, 12.0, 2.0])


def _jsd_terms(p, q):
    # m * g(u), m = (p+q)/2, u = (p-q)/(p+q); g as an even series for small u,
    # else ((1+u) log1p(u) + (1-u) log1p(-u)) / 2. Same split as the compiled kernel.
    s = p + q
    with np.errstate(divide="ignore", invalid="ignore"):
        u = np.where(s > 0.0, (p - q) / np.where(s > 0.0, s, 1.0), 0.0)
        w = u * u
        g = np.where(
            w < 0.01,
            w * np.polyval(_SERIES, w),
            0.5 * ((1.0 + u) * np.log1p(u) + (1.0 - u) * np.log1p(-u)),
        )
    g = np.where(np.abs(u) >= 1.0, LN2, g)
    return 0.5 * s * g


def entropy_rows(p):
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(p > 0.0, p * np.log(np.where(p > 0.0, p, 1.0)), 0.0)
    return -np.sum(t, axis=-1)


def jsd_rows(p, q):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    p, q = np.broadcast_arrays(p, q)
    return np.sum(_jsd_terms(p, q), axis=-1)


def hellinger_sq_rows(p, q):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    p, q = np.broadcast_arrays(p, q)
    rs = np.sqrt(p) + np.sqrt(q)
    with np.errstate(divide="ignore", invalid="ignore"):
        d = np.where(rs > 0.0, (p - q) / np.where(rs > 0.0, rs, 1.0), 0.0)
    return np.minimum(0.5 * np.sum(d * d, axis=-1), 1.0)


def bhattacharyya_rows(p, q):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    p, q = np.broadcast_arrays(p, q)
    return np.minimum(np.sum(np.sqrt(p * q), axis=-1), 1.0)


def kl_rows(p, q):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    p, q = np.broadcast_arrays(p, q)
    pos = p > 0.0
    bad = np.any(pos & (q <= 0.0), axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(pos & (q > 0.0), p * np.log(np.where(pos, p, 1.0) / np.where(q > 0.0, q, 1.0)), 0.0)
    out = np.maximum(np.sum(t, axis=-1), 0.0)
    return np.where(bad, np.inf, out)


def jsd_gram(x):
    x = np.asarray(x, dtype=float)
    g = np.sum(_jsd_terms(x[:, None, :], x[None, :, :]), axis=-1)
    np.fill_diagonal(g, 0.0)
    return g
