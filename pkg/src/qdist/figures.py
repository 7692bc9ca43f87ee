"""Data behind the three figures: JSD against half the squared Wootters
angle for binary distributions, and the rotated-basis JSD bound by the
state angle phi.
"""

from __future__ import annotations

import math

import numpy as np

from . import hilbert, simplex
from .errors import ValidationError
from .tables import SweepTable

BOUND_SLACK = 1e-10


class BoundViolation(RuntimeError):
    """A generated table fails its own bound check."""


def grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive uniform grid, rounded to 12 decimals so nominal points are exact."""
    if step <= 0:
        raise ValidationError("grid step must be positive")
    if stop < start:
        raise ValidationError("grid stop must not precede start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(n), 12)


def fig1(a: float = 0.5, b_start: float = 0.001, b_stop: float = 0.999, b_step: float = 0.001) -> SweepTable:
    """Columns b, jsd, half_wootters_sq for (a, 1-a) against (b, 1-b)."""
    if not (0.0 < a < 1.0):
        raise ValidationError("a must lie in (0, 1)")
    b = grid(b_start, b_stop, b_step)
    if b[0] < 0.0 or b[-1] > 1.0:
        raise ValidationError("b grid must lie within [0, 1]")
    p = np.broadcast_to(np.array([a, 1.0 - a]), (b.size, 2))
    q = np.stack([b, 1.0 - b], axis=-1)
    js = simplex.jsd_batch(p, q)
    hw = 0.5 * simplex.wootters_batch(p, q) ** 2
    return SweepTable(("b", "jsd", "half_wootters_sq"), np.column_stack([b, js, hw]))


def _check_phi(phis):
    phis = np.asarray(phis, dtype=float)
    if np.any(phis < 0.0) or np.any(phis > math.pi / 2):
        raise ValidationError("phi must lie in [0, pi/2]")
    return phis


def _check_theta(thetas):
    if np.any(thetas < 0.0) or np.any(thetas > 2 * math.pi + 1e-12):
        raise ValidationError("theta must lie in [0, 2 pi]")


def check_phi_bound(values: np.ndarray, phis: np.ndarray, slack: float = BOUND_SLACK) -> float:
    """Raise :class:`BoundViolation` unless values <= phi + slack; return the worst margin."""
    margin = float(np.max(values - phis)) if values.size else -math.inf
    if margin > slack:
        raise BoundViolation(f"sqrt(2 JSD) exceeds phi by {margin:.3g}")
    return margin


def scaled_rotated_jsd(phi, theta) -> np.ndarray:
    """sqrt(2 JSD) in the rotated basis, the quantity plotted against phi."""
    return np.sqrt(2.0 * hilbert.rotated_jsd_grid(phi, theta))


def fig2(phis=(0.5, 0.8), n_theta: int = 1024, slack: float = BOUND_SLACK) -> SweepTable:
    """theta in [0, 2 pi] at step 2 pi / n_theta, one column ``phi_<value>`` per phi."""
    phis = _check_phi(phis)
    if n_theta < 1:
        raise ValidationError("n_theta must be positive")
    theta = 2.0 * math.pi * np.arange(n_theta + 1) / n_theta
    cols = ["theta"]
    data = [theta]
    for ph in phis:
        v = scaled_rotated_jsd(ph, theta)
        check_phi_bound(v, np.full_like(v, ph), slack)
        cols.append(f"phi_{format(float(ph), '.12g')}")
        data.append(v)
    return SweepTable(tuple(cols), np.column_stack(data))


def fig3(n_theta: int = 128, n_phi: int = 128, slack: float = BOUND_SLACK) -> SweepTable:
    """Long format (theta, phi, value) on an inclusive n_theta x n_phi grid."""
    if n_theta < 2 or n_phi < 2:
        raise ValidationError("grids need at least 2 points")
    theta = np.linspace(0.0, 2.0 * math.pi, n_theta)
    phi = np.linspace(0.0, math.pi / 2, n_phi)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    v = scaled_rotated_jsd(pp, tt)
    check_phi_bound(v, pp, slack)
    return SweepTable(("theta", "phi", "value"), np.column_stack([tt.ravel(), pp.ravel(), v.ravel()]))
