import numpy as np
import pytest

from qdist import _kernels_py, kernels
from qdist.simplex import random_probvecs

NAMES = ["jsd_rows", "hellinger_sq_rows", "bhattacharyya_rows", "kl_rows"]


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "numpy")


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled extension not built")
@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("n", [2, 3, 6])
def test_compiled_matches_fallback(name, n, rng):
    p = random_probvecs(rng, n, 2000)
    q = random_probvecs(rng, n, 2000)
    # include exact zeros and identical rows
    p[:50, 0] = 0.0
    p[:50] /= p[:50].sum(axis=1, keepdims=True)
    q[50:100] = p[50:100]
    q[100:150, 1:] = 0.0
    q[100:150, 0] = 1.0
    fast = getattr(kernels, name)(p, q)
    ref = getattr(_kernels_py, name)(p, q)
    np.testing.assert_allclose(fast, ref, rtol=1e-13, atol=1e-15)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled extension not built")
def test_compiled_entropy_and_gram(rng):
    x = random_probvecs(rng, 5, 40)
    np.testing.assert_allclose(kernels.entropy_rows(x), _kernels_py.entropy_rows(x), rtol=1e-14)
    np.testing.assert_allclose(kernels.jsd_gram(x), _kernels_py.jsd_gram(x), rtol=1e-13, atol=1e-16)


def test_broadcasting_over_leading_axes(rng):
    x = random_probvecs(rng, 4, (3, 5))
    g = kernels.jsd_rows(x[:, :, None, :], x[:, None, :, :])
    assert g.shape == (3, 5, 5)
    np.testing.assert_allclose(g[1], kernels.jsd_gram(x[1]), atol=1e-16)


def test_single_row_returns_scalar():
    assert np.ndim(kernels.jsd_rows([0.5, 0.5], [1.0, 0.0])) == 0


def test_fallback_handles_boundary_terms():
    p = np.array([[1.0, 0.0], [0.0, 1.0]])
    q = np.array([[0.0, 1.0], [0.0, 1.0]])
    np.testing.assert_allclose(_kernels_py.jsd_rows(p, q), [np.log(2.0), 0.0])
    assert np.isinf(_kernels_py.kl_rows(p, q)[0])
