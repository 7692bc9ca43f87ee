"""Backend selection for the row-wise distance kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy versions in ``_kernels_py`` are used. Set ``QDIST_PURE_PYTHON=1`` to
force the fallback.
"""

import os

import numpy as np

from . import _kernels_py

_compiled = None
if not os.environ.get("QDIST_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "numpy"


def _rows(a):
    a = np.ascontiguousarray(a, dtype=np.float64)
    if a.ndim == 1:
        return a[None, :], True
    return a, False


def _binary(name):
    compiled = getattr(_compiled, name, None)
    fallback = getattr(_kernels_py, name)

    def kernel(p, q):
        if compiled is None:
            return fallback(p, q)
        p, q = np.broadcast_arrays(np.asarray(p, dtype=np.float64), np.asarray(q, dtype=np.float64))
        p2, squeeze = _rows(p)
        q2, _ = _rows(q)
        if p2.ndim > 2:
            shape = p2.shape[:-1]
            out = compiled(np.ascontiguousarray(p2.reshape(-1, p2.shape[-1])),
                           np.ascontiguousarray(q2.reshape(-1, q2.shape[-1])))
            return out.reshape(shape)
        out = compiled(p2, q2)
        return out[0] if squeeze else out

    kernel.__name__ = name
    kernel.__doc__ = fallback.__doc__
    return kernel


jsd_rows = _binary("jsd_rows")
hellinger_sq_rows = _binary("hellinger_sq_rows")
bhattacharyya_rows = _binary("bhattacharyya_rows")
kl_rows = _binary("kl_rows")


def entropy_rows(p):
    if _compiled is None:
        return _kernels_py.entropy_rows(p)
    p2, squeeze = _rows(p)
    shape = p2.shape[:-1]
    out = _compiled.entropy_rows(p2.reshape(-1, p2.shape[-1])).reshape(shape)
    return out[0] if squeeze else out


def jsd_gram(x):
    """Pairwise JSD matrix of the rows of ``x``."""
    if _compiled is None:
        return _kernels_py.jsd_gram(x)
    return _compiled.jsd_gram(np.ascontiguousarray(x, dtype=np.float64))
