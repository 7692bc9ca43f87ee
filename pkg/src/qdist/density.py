"""Density matrices, von Neumann entropy and the quantum Jensen-Shannon divergence."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .errors import DimensionMismatchError, ValidationError
from .hilbert import PureState
from .simplex import DivergenceValue

DENSITY_TOL = 1e-9
PSD_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite complex matrix."""

    entries: np.ndarray

    def __post_init__(self):
        r = np.array(self.entries, dtype=complex)
        if r.ndim != 2 or r.shape[0] != r.shape[1] or r.shape[0] < 1:
            raise ValidationError(f"density matrix must be square, got shape {r.shape}")
        if not np.all(np.isfinite(r)):
            raise ValidationError("density matrix entries must be finite")
        herm = np.max(np.abs(r - r.conj().T))
        if herm > DENSITY_TOL:
            raise ValidationError(f"not Hermitian (max |rho - rho^dagger| = {herm:.3g})")
        tr = np.trace(r)
        if abs(tr - 1.0) > DENSITY_TOL:
            raise ValidationError(f"trace is {tr.real:.12g}, not 1")
        # symmetrize so the Hermitian eigensolver sees an exactly Hermitian matrix
        r = 0.5 * (r + r.conj().T)
        lam = np.linalg.eigvalsh(r)
        if lam[0] < -PSD_TOL:
            raise ValidationError(f"not positive semidefinite (smallest eigenvalue {lam[0]:.3g})")
        r.setflags(write=False)
        object.__setattr__(self, "entries", r)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Spectrum in ascending order, clipped to [0, 1]."""
        return np.clip(np.linalg.eigvalsh(self.entries), 0.0, 1.0)

    @classmethod
    def diagonal(cls, p) -> "DensityMatrix":
        return cls(np.diag(np.asarray(p, dtype=float)))

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


def from_pure_state(s) -> DensityMatrix:
    """Projector |psi><psi|."""
    a = s.amplitudes if isinstance(s, PureState) else PureState(s).amplitudes
    return DensityMatrix(np.outer(a, a.conj()))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-Tr(rho ln rho), computed from the spectrum."""
    return max(float(kernels.entropy_rows(rho.eigenvalues())), 0.0)


def quantum_jsd(rho1: DensityMatrix, rho2: DensityMatrix) -> DivergenceValue:
    """S((rho1 + rho2)/2) - S(rho1)/2 - S(rho2)/2 with S the von Neumann entropy."""
    if rho1.dim != rho2.dim:
        raise DimensionMismatchError(f"dimension mismatch: {rho1.dim} vs {rho2.dim}")
    mix = DensityMatrix(0.5 * (rho1.entries + rho2.entries))
    v = von_neumann_entropy(mix) - 0.5 * von_neumann_entropy(rho1) - 0.5 * von_neumann_entropy(rho2)
    return DivergenceValue(max(v, 0.0))


_COMPLEX_RE = re.compile(r"^[+-]?[0-9.eE+-]*i?$")


def parse_complex(token: str) -> complex:
    """Parse ``re``, ``re+imi``, ``imi`` (``j`` is accepted too)."""
    t = token.strip().replace(" ", "")
    if not t or not _COMPLEX_RE.match(t.replace("j", "i")):
        raise ValidationError(f"cannot parse complex entry {token!r}")
    t = t.replace("i", "j")
    if t in ("j", "+j", "-j"):
        t = t.replace("j", "1j")
    try:
        return complex(t)
    except ValueError:
        raise ValidationError(f"cannot parse complex entry {token!r}") from None


def parse_matrix_text(text: str) -> np.ndarray:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append([parse_complex(tok) for tok in re.split(r"[,\s]+", line) if tok])
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValidationError("matrix rows must be nonempty and of equal length")
    return np.array(rows, dtype=complex)


def load_density_matrix(path) -> DensityMatrix:
    """Read a plain-text matrix: one row per line, entries like ``0.5`` or ``0.1-0.2i``."""
    return DensityMatrix(parse_matrix_text(Path(path).read_text()))


def format_complex(z: complex) -> str:
    re_, im = z.real, z.imag
    if im == 0:
        return f"{re_:.12g}"
    return f"{re_:.12g}{im:+.12g}i"

