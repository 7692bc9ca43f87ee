"""Pure states, measurement bases and the distances they induce.

Amplitudes are stored in the standard coordinate basis. A measurement
basis maps a state to outcome probabilities p_i = |<phi_i|psi>|^2, and any
classical distance from :mod:`qdist.simplex` then becomes a (basis
dependent) distance between states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import simplex
from .errors import DimensionMismatchError, UnsupportedDimensionError, ValidationError
from .simplex import INFINITE, DivergenceValue, ProbVec

STATE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized complex amplitude vector; equality is ray equality."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if a.size < 2:
            raise ValidationError("a state needs dimension >= 2")
        if not np.all(np.isfinite(a)):
            raise ValidationError("amplitudes must be finite")
        norm2 = float(np.vdot(a, a).real)
        if abs(norm2 - 1.0) > STATE_TOL:
            raise ValidationError(f"state not normalized: <psi|psi> = {norm2!r}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def from_vector(cls, v) -> "PureState":
        v = np.asarray(v, dtype=complex).reshape(-1)
        n = np.linalg.norm(v)
        if n == 0:
            raise ValidationError("zero vector has no ray")
        return cls(v / n)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        return self.dim == other.dim and abs(overlap(self, other) - 1.0) <= STATE_TOL

    __hash__ = None


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Orthonormal basis; row i of ``vectors`` holds the components of phi_i."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 2:
            raise ValidationError(f"basis must be an N x N array with N >= 2, got shape {v.shape}")
        gram = v.conj() @ v.T
        dev = np.max(np.abs(gram - np.eye(v.shape[0])))
        if dev > STATE_TOL:
            raise ValidationError(f"basis not orthonormal (Gram deviation {dev:.3g})")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @classmethod
    def standard(cls, n: int) -> "MeasurementBasis":
        return cls(np.eye(n, dtype=complex))

    @classmethod
    def random(cls, n: int, seed=None) -> "MeasurementBasis":
        """Haar-random basis from the QR decomposition of a complex Ginibre matrix."""
        rng = np.random.default_rng(seed)
        return cls(random_unitaries(rng, n, 1)[0].T)

    def state(self, i: int) -> PureState:
        return PureState(self.vectors[i])


@dataclass(frozen=True)
class RotatedBasis2D:
    """One-parameter family of qubit bases

        phi_1(theta) = ( e^{i theta}, e^{-i theta}) / sqrt 2
        phi_2(theta) = (-e^{i theta}, e^{-i theta}) / sqrt 2

    written in the reference basis.
    """

    theta: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= 2.0 * math.pi):
            raise ValidationError(f"theta must lie in [0, 2 pi], got {self.theta}")

    def basis(self) -> MeasurementBasis:
        e = np.exp(1j * self.theta)
        return MeasurementBasis(np.array([[e, e.conjugate()], [-e, e.conjugate()]]) / math.sqrt(2.0))


def random_unitaries(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    z = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[:, None, :]


def random_states(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    """``count`` Haar-distributed unit vectors of dimension ``n`` as rows."""
    z = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_pure_state(n: int, seed=None) -> PureState:
    """Normalized complex Gaussian amplitudes (Haar measure on rays)."""
    if n < 2:
        raise ValidationError("dimension must be >= 2")
    rng = np.random.default_rng(seed)
    return PureState(random_states(rng, n, 1)[0])


def _as_state(s) -> PureState:
    return s if isinstance(s, PureState) else PureState(s)


def _check_dims(*dims):
    if len(set(dims)) != 1:
        raise DimensionMismatchError(f"dimension mismatch: {dims}")


def measurement_probabilities(s, basis: MeasurementBasis) -> ProbVec:
    s = _as_state(s)
    _check_dims(s.dim, basis.dim)
    amp = basis.vectors.conj() @ s.amplitudes
    p = amp.real**2 + amp.imag**2
    return ProbVec(p)


def overlap(s1, s2) -> float:
    """|<psi1|psi2>| clamped to [0, 1]."""
    s1, s2 = _as_state(s1), _as_state(s2)
    _check_dims(s1.dim, s2.dim)
    return min(abs(np.vdot(s1.amplitudes, s2.amplitudes)), 1.0)


def _ray_angle(a: np.ndarray, b: np.ndarray) -> float:
    # angle between rays as atan2(|b_perp|, |<a|b>|/|a|); equal to
    # arccos(|<a|b>|/(|a||b|)) but accurate for nearly parallel rays
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise ValidationError("zero vector has no ray")
    ua = a / na
    ub = b / nb
    c = np.vdot(ua, ub)
    perp = np.linalg.norm(ub - c * ua)
    return math.atan2(perp, abs(c))


def wootters_hilbert_max(s1, s2) -> DivergenceValue:
    """arccos |<psi1|psi2>|, the angle between the two rays."""
    s1, s2 = _as_state(s1), _as_state(s2)
    _check_dims(s1.dim, s2.dim)
    return DivergenceValue(_ray_angle(s1.amplitudes, s2.amplitudes))


def hellinger_hilbert_max_sq(s1, s2) -> DivergenceValue:
    return DivergenceValue(max(1.0 - overlap(s1, s2), 0.0))


def bhattacharyya_hilbert_max(s1, s2) -> DivergenceValue:
    c = overlap(s1, s2)
    if c <= 0.0:
        return INFINITE
    return DivergenceValue(max(-math.log(c), 0.0))


ANALYTIC_MAXIMA = {
    "wootters": wootters_hilbert_max,
    "hellinger": hellinger_hilbert_max_sq,
    "bhattacharyya": bhattacharyya_hilbert_max,
}


def fubini_study_angle(psi, eta) -> float:
    """Fubini-Study angle theta with cos^2(theta/2) = |<psi|eta>|^2 / (<psi|psi><eta|eta>).

    Inputs need not be normalized. Ranges over [0, pi]; pi for orthogonal rays.
    """
    a = np.asarray(psi, dtype=complex).reshape(-1)
    b = np.asarray(eta, dtype=complex).reshape(-1)
    _check_dims(a.size, b.size)
    return 2.0 * _ray_angle(a, b)


def induced_distance(kind: str, basis: MeasurementBasis, s1, s2) -> DivergenceValue:
    """Classical distance ``kind`` between the outcome distributions of s1 and s2."""
    p1 = measurement_probabilities(s1, basis)
    p2 = measurement_probabilities(s2, basis)
    return simplex.distance(kind, p1, p2)


# qubit bases up to vector phases:
#   v1 = (cos b, e^{i g} sin b),  v2 = (-e^{-i g} sin b, cos b)

def _qubit_basis(beta: float, gamma: float) -> MeasurementBasis:
    c, s = math.cos(beta), math.sin(beta)
    e = complex(math.cos(gamma), math.sin(gamma))
    return MeasurementBasis(np.array([[c, e * s], [-e.conjugate() * s, c]]))


def _qubit_probs(amp: np.ndarray, beta, gamma) -> np.ndarray:
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    c = np.cos(beta)
    s = np.sin(beta)
    # <v1|psi> = cos b a1 + e^{-i g} sin b a2
    a1 = c * amp[0] + np.exp(-1j * gamma) * s * amp[1]
    p1 = np.clip(a1.real**2 + a1.imag**2, 0.0, 1.0)
    return np.stack([p1, 1.0 - p1], axis=-1)


def _rotated_probs(amp: np.ndarray, theta) -> np.ndarray:
    # <phi_1(theta)|psi> = (e^{-i theta} a1 + e^{i theta} a2) / sqrt 2
    theta = np.asarray(theta, dtype=float)
    a1 = (np.exp(-1j * theta) * amp[0] + np.exp(1j * theta) * amp[1]) / math.sqrt(2.0)
    p1 = np.clip(a1.real**2 + a1.imag**2, 0.0, 1.0)
    return np.stack([p1, 1.0 - p1], axis=-1)


def maximize_induced_distance(kind: str, s1, s2, grid: int = 1024, family: str = "full"):
    """Maximize ``induced_distance(kind, A, s1, s2)`` over qubit bases A.

    ``family="full"`` searches every qubit basis (polar and azimuthal angle
    of the first basis vector); ``family="rotated"`` restricts the search to
    :class:`RotatedBasis2D`. A dense grid is followed by local refinement
    from the best grid point; ties go to the smallest grid coordinates.

    Returns ``(value, basis)``.
    """
    s1, s2 = _as_state(s1), _as_state(s2)
    _check_dims(s1.dim, s2.dim)
    if s1.dim != 2:
        raise UnsupportedDimensionError("basis maximization is implemented for qubits (N = 2) only")
    fn = simplex.BATCH_DISTANCES.get(kind)
    if fn is None:
        raise ValueError(f"unknown distance {kind!r}")
    a, b = s1.amplitudes, s2.amplitudes

    if family == "rotated":
        thetas = np.linspace(0.0, math.pi, grid, endpoint=False)
        vals = fn(_rotated_probs(a, thetas), _rotated_probs(b, thetas))
        k = int(np.argmax(vals))
        best_t, best_v = float(thetas[k]), float(vals[k])
        if math.isfinite(best_v):
            step = math.pi / grid
            res = optimize.minimize_scalar(
                lambda t: -float(fn(_rotated_probs(a, t), _rotated_probs(b, t))),
                bounds=(best_t - step, best_t + step),
                method="bounded",
                options={"xatol": 1e-12},
            )
            if -res.fun > best_v:
                best_t, best_v = float(res.x) % math.pi, float(-res.fun)
        return DivergenceValue(best_v), RotatedBasis2D(best_t).basis()

    if family != "full":
        raise ValueError(f"unknown basis family {family!r}")
    nb = max(grid // 16, 8)
    ng = max(grid // nb, 8)
    betas = np.linspace(0.0, math.pi / 2, nb + 1)
    gammas = np.linspace(0.0, 2 * math.pi, ng, endpoint=False)
    bb, gg = np.meshgrid(betas, gammas, indexing="ij")
    vals = fn(_qubit_probs(a, bb, gg), _qubit_probs(b, bb, gg))
    k = int(np.argmax(vals))
    best = np.array([bb.flat[k], gg.flat[k]])
    best_v = float(vals.flat[k])
    if math.isfinite(best_v):
        res = optimize.minimize(
            lambda x: -float(fn(_qubit_probs(a, x[0], x[1]), _qubit_probs(b, x[0], x[1]))),
            best,
            method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-16, "maxiter": 4000},
        )
        if -res.fun > best_v:
            best, best_v = res.x, float(-res.fun)
    return DivergenceValue(best_v), _qubit_basis(float(best[0]), float(best[1]))


def rotated_probabilities_2d(s, theta: float) -> ProbVec:
    """Outcome distribution of a qubit state in ``RotatedBasis2D(theta)``.

    Closed form p_1 = (p1 + p2)/2 + sqrt(p1 p2) cos(2 theta + alpha_2 - alpha_1),
    where p_k, alpha_k are the modulus squared and phase of amplitude k
    (the phase of a zero amplitude is taken as 0).
    """
    s = _as_state(s)
    if s.dim != 2:
        raise UnsupportedDimensionError("rotated bases are defined for qubits only")
    return ProbVec(_rotated_closed_form(s.amplitudes, theta))


def _rotated_closed_form(amp: np.ndarray, theta):
    p = np.abs(amp) ** 2
    alpha = np.angle(amp)
    theta = np.asarray(theta, dtype=float)
    p1 = 0.5 * (p[0] + p[1]) + math.sqrt(p[0] * p[1]) * np.cos(2.0 * theta + alpha[1] - alpha[0])
    p1 = np.clip(p1, 0.0, 1.0)
    return np.stack([p1, 1.0 - p1], axis=-1)


def _rotated_pair(phi, theta):
    """Outcome distributions of (1, 0) and (cos phi, sin phi) in the rotated basis, broadcast."""
    phi = np.asarray(phi, dtype=float)
    theta = np.asarray(theta, dtype=float)
    phi, theta = np.broadcast_arrays(phi, theta)
    half = np.full(phi.shape + (2,), 0.5)
    p1 = 0.5 + np.sin(phi) * np.cos(phi) * np.cos(2.0 * theta)
    p1 = np.clip(p1, 0.0, 1.0)
    return half, np.stack([p1, 1.0 - p1], axis=-1)


def rotated_jsd_grid(phi, theta) -> np.ndarray:
    """Vectorized :func:`rotated_jsd_2d` over broadcast ``phi`` and ``theta``."""
    p, q = _rotated_pair(phi, theta)
    return simplex.jsd_batch(p, q)


def rotated_wootters_grid(phi, theta) -> np.ndarray:
    p, q = _rotated_pair(phi, theta)
    return simplex.wootters_batch(p, q)


def rotated_jsd_2d(phi: float, theta: float) -> DivergenceValue:
    """JSD between the rotated-basis distributions of (1, 0) and (cos phi, sin phi)."""
    if not (0.0 <= phi <= math.pi / 2):
        raise ValidationError(f"phi must lie in [0, pi/2], got {phi}")
    if not (0.0 <= theta <= 2 * math.pi):
        raise ValidationError(f"theta must lie in [0, 2 pi], got {theta}")
    s1 = PureState([1.0, 0.0])
    s2 = PureState([math.cos(phi), math.sin(phi)])
    return simplex.jsd(rotated_probabilities_2d(s1, theta), rotated_probabilities_2d(s2, theta))
