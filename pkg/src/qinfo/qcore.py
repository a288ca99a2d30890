"""Dense complex linear algebra for few-qubit systems.

Matrices are plain ``numpy`` complex arrays. ``PureState`` and
``DensityMatrix`` wrap them with validation and are immutable (their
arrays are flagged read-only). Qubit 0 is the most significant bit of a
basis index, so ``|01>`` is index 1 and ``|10>`` is index 2.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from qinfo.errors import (
    ArgumentError,
    DimensionError,
    NegativeEigenvalueError,
    NotHermitianError,
    NotNormalizedError,
    TraceError,
    ValidationError,
)

VALIDATION_TOL = 1e-9
EXACT_TOL = 1e-12
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
DEFAULT_MAX_QUBITS = 6


def max_qubits() -> int:
    """Qubit cap, read from ``QINFO_MAX_QUBITS`` (default 6)."""
    raw = os.environ.get("QINFO_MAX_QUBITS")
    if raw is None or raw == "":
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError:
        raise DimensionError(f"QINFO_MAX_QUBITS must be an integer, got {raw!r}") from None
    if value < 1:
        raise DimensionError("QINFO_MAX_QUBITS must be >= 1")
    return value


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


def _qubits_for_dim(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise DimensionError(f"dimension {dim} is not 2**n for n >= 1")
    if n > max_qubits():
        raise DimensionError(f"{n} qubits exceeds the cap of {max_qubits()}")
    return n


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite square complex matrix."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    return a


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over ``n_qubits`` qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if not np.all(np.isfinite(amps)):
            raise ValidationError("amplitudes must be finite")
        _qubits_for_dim(amps.size)
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > VALIDATION_TOL:
            raise NotNormalizedError(f"squared norm is {norm!r}, expected 1")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def from_amplitudes(cls, *amps: complex) -> "PureState":
        return cls(np.array(amps, dtype=np.complex128))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def __repr__(self):
        return f"PureState({np.array2string(self.amplitudes, precision=6)})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix over qubits.

    Construction checks, in order, Hermiticity, positivity and trace, and
    raises :class:`NotHermitianError`, :class:`NegativeEigenvalueError` or
    :class:`TraceError` for the first one that fails.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        _qubits_for_dim(m.shape[0])
        herm = hermiticity_error(m)
        if herm > VALIDATION_TOL:
            raise NotHermitianError(f"max |M - M^H| entry is {herm:.3g}")
        lam_min = hermitian_eigenvalues(m)[-1]
        if lam_min < -VALIDATION_TOL:
            raise NegativeEigenvalueError(f"smallest eigenvalue is {lam_min:.6g}")
        tr = np.trace(m)
        if abs(tr - 1.0) > VALIDATION_TOL:
            raise TraceError(f"trace is {tr.real:.12g}{tr.imag:+.3g}j, expected 1")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()

    def spectrum(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)

    def is_pure(self, tol: float = 1e-6) -> bool:
        lam = self.spectrum()
        return abs(lam[0] - 1.0) <= tol and bool(np.all(np.abs(lam[1:]) <= tol))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self):
        return f"DensityMatrix(n_qubits={self.n_qubits},\n{np.array2string(self.matrix, precision=6)})"


def validate_density(m) -> DensityMatrix:
    """Return ``m`` as a :class:`DensityMatrix` or raise the failing check."""
    if isinstance(m, DensityMatrix):
        return m
    return DensityMatrix(m)


def pure_to_density(psi: PureState) -> DensityMatrix:
    """Outer product ``|psi><psi|``."""
    if not isinstance(psi, PureState):
        psi = PureState(psi)
    v = psi.amplitudes
    return DensityMatrix(np.outer(v, v.conj()))


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; ``(A⊗B)[i*dB+k, j*dB+l] = A[i,j] * B[k,l]``."""
    a = as_matrix(a.matrix if isinstance(a, DensityMatrix) else a)
    b = as_matrix(b.matrix if isinstance(b, DensityMatrix) else b)
    dim = a.shape[0] * b.shape[0]
    if dim > 2 ** max_qubits():
        raise DimensionError(f"product dimension {dim} exceeds 2**{max_qubits()}")
    return np.kron(a, b)


def partial_trace(rho: DensityMatrix, keep: int | Sequence[int]) -> DensityMatrix:
    """Reduced state on the qubits in ``keep``, tracing out the rest.

    ``keep`` is a single qubit index or a contiguous ascending run of
    indices.
    """
    rho = validate_density(rho)
    n = rho.n_qubits
    if n < 2:
        raise ArgumentError("partial trace needs at least 2 qubits")
    kept = [keep] if isinstance(keep, (int, np.integer)) else list(keep)
    if not kept or any(not 0 <= int(q) < n for q in kept):
        raise ArgumentError(f"keep={keep!r} is not a subset of qubits 0..{n - 1}")
    kept = [int(q) for q in kept]
    if kept != list(range(kept[0], kept[0] + len(kept))):
        raise ArgumentError(f"keep={keep!r} must be a contiguous ascending run")
    if len(kept) == n:
        return rho

    k = len(kept)
    # axes: (row q0..q_{n-1}, col q0..q_{n-1}); contract row/col pairs not kept
    t = rho.matrix.reshape((2,) * (2 * n))
    row = list(range(n))
    col = [n + q if q in kept else q for q in range(n)]
    out = kept + [n + q for q in kept]
    reduced = np.einsum(t, row + col, out).reshape(2**k, 2**k)
    return DensityMatrix(reduced)


def _jacobi_sweeps(a: np.ndarray, vectors: bool):
    d = a.shape[0]
    v = np.eye(d, dtype=np.complex128) if vectors else None
    scale = max(1.0, float(np.linalg.norm(a)))
    offdiag = ~np.eye(d, dtype=bool)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a[offdiag])
        if off <= JACOBI_TOL * scale:
            return a, v
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-30 * scale:
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                theta = 0.5 * np.arctan2(2.0 * r, aqq - app)
                c, s = np.cos(theta), np.sin(theta)
                # phase-align (p,q) to a real entry, then a real rotation
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if vectors:
                    v[:, idx] = v[:, idx] @ g
    raise ArithmeticError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def hermitian_eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvector columns of a Hermitian matrix.

    Cyclic complex Jacobi rotations until the off-diagonal Frobenius norm
    drops below ``1e-12`` (relative to ``max(1, ||M||_F)``). Each eigenpair
    is checked for ``||M v - λ v|| <= 1e-8``.
    """
    m = as_matrix(m.matrix if isinstance(m, DensityMatrix) else m)
    if hermiticity_error(m) > VALIDATION_TOL:
        raise NotHermitianError("matrix is not Hermitian within 1e-9")
    h = 0.5 * (m + m.conj().T)
    diag, vecs = _jacobi_sweeps(h.copy(), vectors=True)
    lam = diag.diagonal().real
    order = np.argsort(-lam, kind="stable")
    lam, vecs = lam[order], vecs[:, order]
    resid = np.linalg.norm(h @ vecs - vecs * lam, axis=0)
    if np.any(resid > 1e-8):
        raise ArithmeticError(f"eigenpair residual {resid.max():.3g} exceeds 1e-8")
    return lam, vecs


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    m = as_matrix(m.matrix if isinstance(m, DensityMatrix) else m)
    if hermiticity_error(m) > VALIDATION_TOL:
        raise NotHermitianError("matrix is not Hermitian within 1e-9")
    h = 0.5 * (m + m.conj().T)
    diag, _ = _jacobi_sweeps(h.copy(), vectors=False)
    return np.sort(diag.diagonal().real)[::-1].copy()


# -- random objects ---------------------------------------------------------


def random_density_matrix(n_qubits: int, rng: np.random.Generator) -> DensityMatrix:
    """Full-rank sample ``G G^H / tr(G G^H)`` with complex Gaussian ``G``."""
    d = 2**n_qubits
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    w = g @ g.conj().T
    return DensityMatrix(w / np.trace(w).real)


def random_pure_state(n_qubits: int, rng: np.random.Generator) -> PureState:
    d = 2**n_qubits
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(v / np.linalg.norm(v))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Unitary built by composing phased Givens rotations on every index pair."""
    u = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, dim)))
    for p in range(dim - 1):
        for q in range(p + 1, dim):
            theta, phi = rng.uniform(0, 2 * np.pi, 2)
            g = np.eye(dim, dtype=np.complex128)
            g[p, p] = g[q, q] = np.cos(theta)
            g[p, q] = -np.exp(1j * phi) * np.sin(theta)
            g[q, p] = np.exp(-1j * phi) * np.sin(theta)
            u = g @ u
    return u


def conjugate(rho: DensityMatrix, u: np.ndarray) -> DensityMatrix:
    """``U rho U^H``."""
    return DensityMatrix(u @ rho.matrix @ u.conj().T)


# -- matrix file format -----------------------------------------------------


def matrix_to_json(m) -> dict:
    a = as_matrix(m.matrix if isinstance(m, DensityMatrix) else m)
    return {
        "dim": int(a.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"dim": d, "entries": [[re, im], ...]}`` (row-major)."""
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise ValidationError('matrix JSON needs "dim" and "entries" keys')
    dim = obj["dim"]
    entries = obj["entries"]
    if not isinstance(dim, int) or dim < 1:
        raise ValidationError(f"dim must be a positive integer, got {dim!r}")
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise ValidationError(f"expected {dim * dim} entries")
    try:
        flat = np.array([complex(float(re), float(im)) for re, im in entries])
    except (TypeError, ValueError):
        raise ValidationError("each entry must be a [re, im] pair of numbers") from None
    return as_matrix(flat.reshape(dim, dim))


def load_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path) as fh:
        obj = json.load(fh)
    return matrix_from_json(obj)


def save_matrix(m, path: str | os.PathLike) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(m)) + "\n")
