"""Small-perturbation behaviour of JSD and the Wootters angle.

For a binary distribution (p, 1-p) perturbed to (p+dp, 1-p-dp) both JSD and
half the squared Wootters angle expand as c2 dp^2 + c3 dp^3 + c4 dp^4 + ...
with identical c2 and c3. This module carries those coefficients, fits
empirical orders of residuals, and checks the quadratic (metric) limits
including the Fisher-information form for shifted densities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import simplex
from .errors import SingularityError, ValidationError
from .hilbert import fubini_study_angle


@dataclass(frozen=True)
class SeriesCoefficients:
    c2: float
    c3: float
    c4: float

    def __call__(self, dp, order: int = 4):
        """Truncated series sum_{k=2}^{order} c_k dp^k."""
        if order not in (2, 3, 4):
            raise ValueError("order must be 2, 3 or 4")
        dp = np.asarray(dp, dtype=float)
        out = self.c2 * dp**2
        if order >= 3:
            out = out + self.c3 * dp**3
        if order >= 4:
            out = out + self.c4 * dp**4
        return out


@dataclass(frozen=True)
class OrderFit:
    """Log-log slope of residual versus step.

    ``degenerate`` marks residuals at roundoff level, where no slope is
    meaningful; ``estimated_order`` is then ``inf``.
    """

    estimated_order: float
    r_squared: float
    degenerate: bool = False


def _check_open_unit(p: float):
    if not (0.0 < p < 1.0):
        raise SingularityError(f"p must lie strictly inside (0, 1), got {p}")


def jsd_series_coeffs(p: float) -> SeriesCoefficients:
    _check_open_unit(p)
    c2 = -1.0 / (8.0 * (p - 1.0) * p)
    c3 = (2.0 * p - 1.0) / (16.0 * p**2 * (p - 1.0) ** 2)
    c4 = -(7.0 / 192.0) * (3.0 * p**2 - 3.0 * p + 1.0) / (p**3 * (p - 1.0) ** 3)
    return SeriesCoefficients(c2, c3, c4)


def wootters_sq_half_series_coeffs(p: float) -> SeriesCoefficients:
    _check_open_unit(p)
    c2 = -1.0 / (8.0 * (p - 1.0) * p)
    c3 = (2.0 * p - 1.0) / (16.0 * p**2 * (p - 1.0) ** 2)
    c4 = -(1.0 / 384.0) * (44.0 * p**2 - 44.0 * p + 15.0) / (p**3 * (p - 1.0) ** 3)
    return SeriesCoefficients(c2, c3, c4)


def fourth_order_gap(p: float) -> float:
    """c4(JSD) - c4(W^2/2) = (2p^2 - 2p + 1) / (384 p^3 (p-1)^3); p dependent."""
    return jsd_series_coeffs(p).c4 - wootters_sq_half_series_coeffs(p).c4


def binary_pair(p: float, dp):
    """Rows (p, 1-p) and (p+dp, 1-p-dp), broadcast over ``dp``."""
    dp = np.asarray(dp, dtype=float)
    base = np.broadcast_to(np.array([p, 1.0 - p]), dp.shape + (2,))
    moved = np.stack([p + dp, (1.0 - p) - dp], axis=-1)
    return base, moved


def binary_jsd(p: float, dp):
    a, b = binary_pair(p, dp)
    return simplex.jsd_batch(a, b)


def binary_half_wootters_sq(p: float, dp):
    a, b = binary_pair(p, dp)
    return 0.5 * simplex.wootters_batch(a, b) ** 2


def geometric_steps(start: float, stop: float, count: int = 12) -> np.ndarray:
    return np.geomspace(start, stop, count)


def verify_expansion_order(
    exact: Callable[[np.ndarray], np.ndarray],
    series: Callable[[np.ndarray], np.ndarray],
    p: float,
    dps: Sequence[float],
) -> OrderFit:
    """Fit the order k in |exact(dp) - series(dp)| ~ C dp^k.

    ``exact`` and ``series`` are functions of the step only. Steps must stay
    within (0, min(p, 1-p)/2) so every perturbed point remains interior.
    """
    _check_open_unit(p)
    dps = np.asarray(dps, dtype=float)
    lim = min(p, 1.0 - p) / 2.0
    if dps.size < 3 or np.any(dps <= 0.0) or np.any(dps >= lim):
        raise ValidationError(f"need >= 3 steps inside (0, {lim:.6g})")
    e = np.asarray(exact(dps), dtype=float)
    s = np.asarray(series(dps), dtype=float)
    resid = np.abs(e - s)
    scale = max(float(np.max(np.abs(e))), float(np.finfo(float).tiny))
    if np.all(resid <= 64.0 * np.finfo(float).eps * scale):
        return OrderFit(math.inf, 0.0, degenerate=True)
    if np.any(resid == 0.0):
        raise ValidationError("some residuals are exactly zero; choose larger steps")
    x = np.log(dps)
    y = np.log(resid)
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return OrderFit(float(slope), min(max(r2, 0.0), 1.0))


@dataclass(frozen=True)
class RatioEstimate:
    """metric(p, p+dp) / sum(dp_i^2/p_i) along a fixed direction.

    ``limit`` extrapolates the two smallest magnitudes linearly to dp = 0.
    """

    magnitudes: np.ndarray
    ratios: np.ndarray
    limit: float

    def at(self, magnitude: float) -> float:
        i = int(np.argmin(np.abs(self.magnitudes - magnitude)))
        return float(self.ratios[i])


def _fs_sq(p, q):
    return fubini_study_angle(np.sqrt(p), np.sqrt(q)) ** 2


RATIO_METRICS = {
    "jsd": lambda p, q: float(simplex.jsd(p, q)),
    "half_wootters_sq": lambda p, q: 0.5 * float(simplex.wootters_classical(p, q)) ** 2,
    "wootters_sq": lambda p, q: float(simplex.wootters_classical(p, q)) ** 2,
    "fubini_study_sq": _fs_sq,
    "chi2_half_sq": lambda p, q: float(simplex.chi2_half_distance(p, q)) ** 2,
}


def infinitesimal_ratio_check(metric: str, p, direction, magnitudes=(1e-2, 1e-3, 1e-4)) -> RatioEstimate:
    """Ratio of ``metric`` to the chi-square form sum(dp_i^2 / p_i) as dp shrinks.

    Metrics: ``jsd`` (limit 1/8), ``half_wootters_sq`` (1/8), ``wootters_sq``
    (1/4), ``chi2_half_sq`` (1/4, exactly), and ``fubini_study_sq``, the
    squared Fubini-Study angle between the real states sqrt(p) and
    sqrt(p + dp), whose limit is 1 under the cos^2(theta/2) normalization.
    """
    try:
        fn = RATIO_METRICS[metric]
    except KeyError:
        raise ValueError(f"unknown metric {metric!r}; choose from {sorted(RATIO_METRICS)}") from None
    p = simplex.as_probvec(p).values
    if np.any(p <= 0.0):
        raise SingularityError("base point must be strictly interior")
    d = np.asarray(direction, dtype=float).reshape(-1)
    if d.size != p.size:
        raise ValidationError("direction dimension does not match the base point")
    if abs(d.sum()) > 1e-12 or not np.any(d):
        raise ValidationError("direction must be nonzero and sum to zero")
    d = d / np.max(np.abs(d))
    mags = np.sort(np.asarray(magnitudes, dtype=float))[::-1]
    ratios = []
    for m in mags:
        dp = m * d
        q = p + dp
        if np.any(q <= 0.0):
            raise ValidationError(f"perturbation of size {m} leaves the simplex")
        q = q / q.sum()
        dp = q - p
        ratios.append(fn(p, q) / float(np.sum(dp * dp / p)))
    ratios = np.array(ratios)
    if len(mags) >= 2:
        h1, h2 = mags[-2], mags[-1]
        r1, r2 = ratios[-2], ratios[-1]
        limit = r2 - (r1 - r2) * h2 / (h1 - h2)
    else:
        limit = ratios[-1]
    return RatioEstimate(mags, ratios, float(limit))


@dataclass(frozen=True)
class FisherShift:
    jsd: float
    fisher: float
    ratio: float


def fisher_information(density: np.ndarray, step: float) -> float:
    """Midpoint-rule integral of p'^2/p, central-difference derivative."""
    dens = np.asarray(density, dtype=float)
    dpdx = (dens[2:] - dens[:-2]) / (2.0 * step)
    return float(np.sum(dpdx**2 / dens[1:-1]) * step)


def fisher_shift_check(density, step: float, delta: float, boundary_tol: float = 1e-12) -> FisherShift:
    """Compare JSD(p(x), p(x + delta)) with delta^2 I / 8 on a uniform grid.

    ``density`` holds samples of a strictly positive density at spacing
    ``step``; ``delta`` must be a whole number of steps. The shifted copy is
    the same sample array offset by delta/step, so both distributions live
    on the common window; ``ratio`` tends to 1 as delta -> 0.
    """
    dens = np.asarray(density, dtype=float).reshape(-1)
    if step <= 0:
        raise ValidationError("grid step must be positive")
    if dens.size < 5 or np.any(dens <= 0.0) or not np.all(np.isfinite(dens)):
        raise ValidationError("density samples must be finite and strictly positive")
    shift = delta / step
    k = int(round(shift))
    if abs(shift - k) > 1e-9 * max(1.0, abs(shift)) or k < 0:
        raise ValidationError("delta must be a nonnegative integer multiple of the grid step")
    if k >= dens.size - 2:
        raise ValidationError("shift too large for the grid")
    total = float(np.sum(dens) * step)
    edge = float((np.sum(dens[: k + 1]) + np.sum(dens[dens.size - k - 1 :])) * step)
    if edge > boundary_tol * total:
        raise ValidationError(f"boundary mass {edge:.3g} exceeds {boundary_tol:g}; widen the grid")
    fisher = fisher_information(dens, step) / total
    if k == 0:
        return FisherShift(0.0, fisher, math.nan)
    a = dens[: dens.size - k]
    b = dens[k:]
    val = float(simplex.jsd_batch(a / a.sum(), b / b.sum()))
    return FisherShift(val, fisher, val / (delta**2 * fisher / 8.0))
