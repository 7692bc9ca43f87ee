"""Randomized property suites.

Each suite returns :class:`PropertyResult` records: the property checked,
how many samples it saw, the worst margin (largest value of
``lhs - rhs`` for an inequality ``lhs <= rhs``, or the largest absolute
deviation for an identity) and whether that margin is within tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import hilbert, simplex
from .figures import scaled_rotated_jsd


@dataclass
class PropertyResult:
    name: str
    samples: int
    worst_margin: float
    tolerance: float
    passed: bool
    detail: dict = field(default_factory=dict)


def _result(name, samples, margin, tol, **detail):
    margin = float(margin)
    return PropertyResult(name, int(samples), margin, tol, bool(margin <= tol), detail)


def report_json(results) -> str:
    def clean(v):
        if isinstance(v, float) and not math.isfinite(v):
            return str(v)
        if isinstance(v, dict):
            return {k: clean(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [clean(x) for x in v]
        return v

    return json.dumps([clean(asdict(r)) for r in results], indent=2, sort_keys=True)


def find_triangle_violation(kind: str, rng: np.random.Generator, n: int = 3, samples: int = 100_000,
                            threshold: float = 1e-12):
    """Random search for p, q, r with d(p, r) > d(p, q) + d(q, r) + threshold.

    Returns ``(p, q, r, excess)`` for the worst triple found, or ``None`` if
    no triple beats the threshold.
    """
    fn = simplex.BATCH_DISTANCES[kind]
    p, q, r = (simplex.random_probvecs(rng, n, samples) for _ in range(3))
    excess = fn(p, r) - fn(p, q) - fn(q, r)
    excess = np.where(np.isfinite(excess), excess, -np.inf)
    i = int(np.argmax(excess))
    if excess[i] <= threshold:
        return None
    return p[i], q[i], r[i], float(excess[i])


def metric_suite(samples: int = 100_000, seed: int = 7, tol: float = 1e-12):
    rng = np.random.default_rng(seed)
    out = []
    ln2 = math.log(2.0)
    for n in range(2, 7):
        p, q, r = (simplex.random_probvecs(rng, n, samples) for _ in range(3))
        sj = np.sqrt(simplex.jsd_batch(p, r))
        tri = sj - np.sqrt(simplex.jsd_batch(p, q)) - np.sqrt(simplex.jsd_batch(q, r))
        out.append(_result(f"sqrt_jsd_triangle_N{n}", samples, tri.max(), tol))
        js = simplex.jsd_batch(p, q)
        w = simplex.wootters_batch(p, q)
        h = simplex.hellinger_sq_batch(p, q)
        rng_margin = max((js - ln2).max(), (-js).max(), (w - math.pi / 2).max(), (-w).max(),
                         (h - 1.0).max(), (-h).max())
        out.append(_result(f"range_N{n}", samples, rng_margin, tol))
        sym = max(np.abs(js - simplex.jsd_batch(q, p)).max(),
                  np.abs(h - simplex.hellinger_sq_batch(q, p)).max(),
                  np.abs(w - simplex.wootters_batch(q, p)).max(),
                  np.abs(simplex.bhattacharyya_coefficient_batch(p, q)
                         - simplex.bhattacharyya_coefficient_batch(q, p)).max())
        out.append(_result(f"symmetry_N{n}", samples, sym, tol))
    for kind in ("wootters", "bhattacharyya"):
        hit = find_triangle_violation(kind, rng, 3, samples)
        if hit is None:
            out.append(PropertyResult(f"{kind}_triangle_violation_found", samples, math.nan, tol, False,
                                      {"witness": None}))
        else:
            p, q, r, excess = hit
            out.append(PropertyResult(f"{kind}_triangle_violation_found", samples, -excess, tol, True,
                                      {"witness": [p.tolist(), q.tolist(), r.tolist()], "excess": excess}))
    return out


def kernel_suite(samples: int = 10_000, seed: int = 7, tol: float = 1e-10, max_points: int = 8,
                 max_dim: int = 6):
    """sum_ij z_i z_j JSD(x_i, x_j) <= 0 for zero-sum weights z."""
    rng = np.random.default_rng(seed)
    ms = rng.integers(2, max_points + 1, samples)
    ns = rng.integers(2, max_dim + 1, samples)
    worst = -math.inf
    for m in range(2, max_points + 1):
        for n in range(2, max_dim + 1):
            k = int(np.sum((ms == m) & (ns == n)))
            if k == 0:
                continue
            x = simplex.random_probvecs(rng, n, (k, m))
            z = rng.standard_normal((k, m))
            z -= z.mean(axis=1, keepdims=True)
            gram = simplex.jsd_batch(x[:, :, None, :], x[:, None, :, :])
            quad = np.einsum("ki,kij,kj->k", z, gram, z)
            worst = max(worst, float(quad.max()))
    return [_result("jsd_negative_definite_kernel", samples, worst, tol)]


def desig_suite(samples: int = 10_000, seed: int = 7, tol: float = 1e-12):
    """sum_i |<phi_i|a>||<phi_i|b>| >= |<a|b>| for random bases and states."""
    rng = np.random.default_rng(seed)
    dims = rng.integers(2, 7, samples)
    worst = -math.inf
    worst_w = -math.inf
    for n in range(2, 7):
        k = int(np.sum(dims == n))
        if k == 0:
            continue
        u = hilbert.random_unitaries(rng, n, k)  # columns are basis vectors
        a = hilbert.random_states(rng, n, k)
        b = hilbert.random_states(rng, n, k)
        ca = np.abs(np.einsum("kji,kj->ki", u.conj(), a))
        cb = np.abs(np.einsum("kji,kj->ki", u.conj(), b))
        lhs = np.sum(ca * cb, axis=1)
        ov = np.abs(np.einsum("ki,ki->k", a.conj(), b))
        worst = max(worst, float(np.max(ov - lhs)))
        w_ind = simplex.wootters_batch(ca**2, cb**2)
        w_max = np.arccos(np.clip(ov, 0.0, 1.0))
        worst_w = max(worst_w, float(np.max(w_ind - w_max)))
    return [
        _result("overlap_le_basis_sum", samples, worst, tol),
        _result("induced_wootters_le_angle", samples, worst_w, tol),
    ]


def chain_suite(samples: int = 10_000, seed: int = 7, tol: float = 1e-10, n_grid: int = 128):
    """sqrt(2 JSD_A) <= W_A <= angle, for random qubit bases and on the rotated grid."""
    rng = np.random.default_rng(seed)
    u = hilbert.random_unitaries(rng, 2, samples)
    a = hilbert.random_states(rng, 2, samples)
    b = hilbert.random_states(rng, 2, samples)
    pa = np.abs(np.einsum("kji,kj->ki", u.conj(), a)) ** 2
    pb = np.abs(np.einsum("kji,kj->ki", u.conj(), b)) ** 2
    pa /= pa.sum(axis=1, keepdims=True)
    pb /= pb.sum(axis=1, keepdims=True)
    left = np.sqrt(2.0 * simplex.jsd_batch(pa, pb))
    mid = simplex.wootters_batch(pa, pb)
    ov = np.clip(np.abs(np.einsum("ki,ki->k", a.conj(), b)), 0.0, 1.0)
    right = np.arccos(ov)
    out = [
        _result("chain_jsd_le_wootters_random", samples, np.max(left - mid), tol),
        _result("chain_wootters_le_angle_random", samples, np.max(mid - right), tol),
    ]
    theta = np.linspace(0.0, 2 * math.pi, n_grid)
    phi = np.linspace(0.0, math.pi / 2, n_grid)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    g_left = scaled_rotated_jsd(pp, tt)
    g_mid = hilbert.rotated_wootters_grid(pp, tt)
    out.append(_result("chain_jsd_le_wootters_grid", tt.size, np.max(g_left - g_mid), tol))
    out.append(_result("chain_wootters_le_phi_grid", tt.size, np.max(g_mid - pp), tol))
    return out


def fubini_study_suite(samples: int = 10_000, seed: int = 7, tol: float = 1e-12, scale_tol: float = 1e-10):
    rng = np.random.default_rng(seed)
    dims = rng.integers(2, 7, samples)
    ident = 0.0
    scale = 0.0
    for n, a, b in ((n, *hilbert.random_states(rng, n, 2)) for n in dims):
        fs = hilbert.fubini_study_angle(a, b)
        ov = min(abs(np.vdot(a, b)), 1.0)
        ident = max(ident, abs(fs - 2.0 * math.acos(ov)))
        lam = complex(*rng.standard_normal(2)) * 10.0 ** rng.uniform(-3, 3)
        mu = complex(*rng.standard_normal(2)) * 10.0 ** rng.uniform(-3, 3)
        scale = max(scale, abs(hilbert.fubini_study_angle(lam * a, mu * b) - fs))
    return [
        _result("fubini_study_eq_twice_angle", samples, ident, tol),
        _result("fubini_study_scale_invariant", samples, scale, scale_tol),
    ]


def identity_suite(samples: int = 100_000, seed: int = 7, tol: float = 1e-12):
    rng = np.random.default_rng(seed)
    out = []
    for n in range(2, 7):
        p, q = (simplex.random_probvecs(rng, n, samples) for _ in range(2))
        b = simplex.bhattacharyya_coefficient_batch(p, q)
        h = simplex.hellinger_sq_batch(p, q)
        w = simplex.wootters_batch(p, q)
        out.append(_result(f"hellinger_eq_one_minus_B_N{n}", samples, np.abs(h - (1.0 - b)).max(), tol))
        # compared through cos: arccos amplifies roundoff by 1/sin(W) as B -> 1
        out.append(_result(f"wootters_eq_arccos_B_N{n}", samples, np.abs(np.cos(w) - b).max(), tol))
    return out


SUITES = {
    "metric": metric_suite,
    "kernel": kernel_suite,
    "desig": desig_suite,
    "chain": chain_suite,
    "fs": fubini_study_suite,
    "identities": identity_suite,
}


def run_suite(name: str, samples: int | None = None, seed: int = 7):
    if name == "all":
        return [r for key in SUITES for r in run_suite(key, samples, seed)]
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}") from None
    return fn(seed=seed) if samples is None else fn(samples=samples, seed=seed)
