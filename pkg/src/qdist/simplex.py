"""Distributions on the discrete simplex and the classical distances.

All logarithms are natural, so entropies and divergences are in nats.
Functions accept a :class:`ProbVec` or anything array-like that validates
as one. Divergences come back as :class:`DivergenceValue`, a ``float``
that may carry the explicit infinite flag (KL with a support mismatch,
Bhattacharyya distance of disjoint distributions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionMismatchError, SingularityError, ValidationError

SIMPLEX_TOL = 1e-9


class DivergenceValue(float):
    """Nonnegative divergence in nats (radians for Wootters).

    ``math.inf`` is the explicit "not finite" flag; NaN is rejected.
    """

    def __new__(cls, value):
        v = float(value)
        if math.isnan(v) or v < 0.0:
            raise ValueError(f"divergence must be nonnegative, got {v!r}")
        return super().__new__(cls, v)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self)

    def __repr__(self):
        return "DivergenceValue(inf)" if self.is_infinite else f"DivergenceValue({float(self)!r})"


INFINITE = DivergenceValue(math.inf)


@dataclass(frozen=True, eq=False)
class ProbVec:
    """A point of the simplex: N >= 2 entries in [0, 1] summing to 1.

    Validation uses an absolute tolerance of 1e-9 and never renormalizes;
    use :meth:`normalized` to build one from unnormalized weights.
    Entries within tolerance below zero are stored as exact zeros.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).reshape(-1)
        if v.size < 2:
            raise ValidationError(f"need at least 2 outcomes, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise ValidationError("probabilities must be finite")
        if np.any(v < -SIMPLEX_TOL) or np.any(v > 1.0 + SIMPLEX_TOL):
            raise ValidationError(f"entries outside [0, 1]: {v}")
        total = v.sum()
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise ValidationError(f"entries sum to {total!r}, not 1")
        v = np.clip(v, 0.0, 1.0)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def normalized(cls, weights) -> "ProbVec":
        w = np.asarray(weights, dtype=float).reshape(-1)
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValidationError("weights must be finite and nonnegative")
        s = w.sum()
        if s <= 0:
            raise ValidationError("weights sum to zero")
        return cls(w / s)

    @property
    def n(self) -> int:
        return self.values.size

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values.tolist())

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, ProbVec):
            return NotImplemented
        return self.n == other.n and bool(np.all(self.values == other.values))

    __hash__ = None

    def __repr__(self):
        return f"ProbVec({self.values.tolist()})"


def as_probvec(p) -> ProbVec:
    return p if isinstance(p, ProbVec) else ProbVec(p)


def _pair(p, q) -> tuple[np.ndarray, np.ndarray]:
    p, q = as_probvec(p), as_probvec(q)
    if p.n != q.n:
        raise DimensionMismatchError(f"dimension mismatch: {p.n} vs {q.n}")
    return p.values, q.values


def random_probvecs(rng: np.random.Generator, n: int, size=None) -> np.ndarray:
    """Flat-Dirichlet samples (normalized exponential variates).

    Returns an array of shape ``(*size, n)``; rows are on the simplex.
    """
    shape = (n,) if size is None else (*np.atleast_1d(size), n)
    e = rng.standard_exponential(shape)
    return e / e.sum(axis=-1, keepdims=True)


def shannon_entropy(p) -> float:
    """-sum p_i ln p_i with 0 ln 0 = 0."""
    v = as_probvec(p).values
    return max(float(kernels.entropy_rows(v)), 0.0)


def kl_divergence(p, q) -> DivergenceValue:
    """Kullback-Leibler divergence sum p_i ln(p_i/q_i).

    Returns :data:`INFINITE` when some q_i = 0 while p_i > 0.
    """
    a, b = _pair(p, q)
    return DivergenceValue(kernels.kl_rows(a, b))


def jsd(p, q) -> DivergenceValue:
    """Jensen-Shannon divergence H((p+q)/2) - H(p)/2 - H(q)/2.

    Evaluated per outcome as m * g(u) with m = (p+q)/2, u = (p-q)/(p+q),
    g(u) = u artanh(u) + ln(1-u^2)/2. This is the same quantity without the
    cancellation the entropy difference suffers when p is close to q.
    Bounded by ln 2 and symmetric.
    """
    a, b = _pair(p, q)
    return DivergenceValue(min(max(float(kernels.jsd_rows(a, b)), 0.0), math.log(2.0)))


def bhattacharyya_coefficient(p, q) -> float:
    a, b = _pair(p, q)
    return float(np.clip(kernels.bhattacharyya_rows(a, b), 0.0, 1.0))


def hellinger_sq(p, q) -> DivergenceValue:
    """Squared Hellinger distance (1/2) sum (sqrt p_i - sqrt q_i)^2, equal to 1 - B."""
    a, b = _pair(p, q)
    return DivergenceValue(float(kernels.hellinger_sq_rows(a, b)))


def _angle_from_hellinger(h):
    # arccos(1 - h) == 2 arcsin(sqrt(h/2)); the second form keeps precision as h -> 0
    # min() absorbs the 1 ulp overshoot of 2 arcsin(sqrt(1/2)) past pi/2
    return np.minimum(2.0 * np.arcsin(np.sqrt(np.clip(h, 0.0, 1.0) / 2.0)), np.pi / 2)


def wootters_classical(p, q) -> DivergenceValue:
    """Statistical angle arccos(B(p, q)) in radians, within [0, pi/2]."""
    return DivergenceValue(float(_angle_from_hellinger(hellinger_sq(p, q))))


def bhattacharyya_distance(p, q) -> DivergenceValue:
    """-ln B(p, q); :data:`INFINITE` for disjoint supports."""
    h = float(hellinger_sq(p, q))
    if h >= 1.0:
        return INFINITE
    return DivergenceValue(max(-math.log1p(-h), 0.0))


def chi2_half_distance(p, q) -> DivergenceValue:
    """(1/2) sqrt(sum (p_i - q_i)^2 / p_i), skipping outcomes with p_i = q_i = 0.

    Raises :class:`SingularityError` if p_i = 0 while q_i != 0.
    """
    return DivergenceValue(0.5 * math.sqrt(chi2_sum(p, q)))


def chi2_sum(p, q) -> float:
    """sum (p_i - q_i)^2 / p_i over the support of p; the denominator uses p."""
    a, b = _pair(p, q)
    zero = a == 0.0
    if np.any(zero & (b != 0.0)):
        raise SingularityError("chi-square denominator vanishes: p_i = 0 where q_i != 0")
    d = (a - b)[~zero]
    return float(np.sum(d * d / a[~zero]))


# batch versions over rows, used by the property suites and sweeps

def jsd_batch(p, q) -> np.ndarray:
    return np.clip(kernels.jsd_rows(p, q), 0.0, math.log(2.0))


def hellinger_sq_batch(p, q) -> np.ndarray:
    return np.clip(kernels.hellinger_sq_rows(p, q), 0.0, 1.0)


def bhattacharyya_coefficient_batch(p, q) -> np.ndarray:
    return np.clip(kernels.bhattacharyya_rows(p, q), 0.0, 1.0)


def wootters_batch(p, q) -> np.ndarray:
    return _angle_from_hellinger(hellinger_sq_batch(p, q))


def bhattacharyya_distance_batch(p, q) -> np.ndarray:
    h = hellinger_sq_batch(p, q)
    with np.errstate(divide="ignore"):
        return np.maximum(-np.log1p(-h), 0.0)


def kl_batch(p, q) -> np.ndarray:
    return kernels.kl_rows(p, q)


def chi2_half_batch(p, q) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    d2 = (p - q) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(p > 0.0, d2 / np.where(p > 0.0, p, 1.0), np.where(d2 > 0.0, np.inf, 0.0))
    return 0.5 * np.sqrt(np.sum(t, axis=-1))


DISTANCES = {
    "jsd": jsd,
    "kl": kl_divergence,
    "hellinger": hellinger_sq,
    "wootters": wootters_classical,
    "bhattacharyya": bhattacharyya_distance,
    "chi2": chi2_half_distance,
}

BATCH_DISTANCES = {
    "jsd": jsd_batch,
    "kl": kl_batch,
    "hellinger": hellinger_sq_batch,
    "wootters": wootters_batch,
    "bhattacharyya": bhattacharyya_distance_batch,
    "chi2": chi2_half_batch,
}


def distance(kind: str, p, q) -> DivergenceValue:
    """Dispatch on a distance name (one of :data:`DISTANCES`)."""
    try:
        fn = DISTANCES[kind]
    except KeyError:
        raise ValueError(f"unknown distance {kind!r}; choose from {sorted(DISTANCES)}") from None
    return fn(p, q)
