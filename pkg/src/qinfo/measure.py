"""Born-rule sampling and single-qubit Pauli tomography."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from qinfo._rng import stream
from qinfo.errors import ArgumentError, DimensionError, NotHermitianError, TraceError
from qinfo.qcore import (
    VALIDATION_TOL,
    DensityMatrix,
    as_matrix,
    hermitian_eigenvalues,
    hermitian_eigh,
    hermiticity_error,
    validate_density,
)

I2 = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

_S = 1 / math.sqrt(2)
_BASIS_VECTORS = {
    "Z": np.array([[1, 0], [0, 1]], dtype=np.complex128),
    "X": np.array([[_S, _S], [_S, -_S]], dtype=np.complex128),
    "Y": np.array([[_S, 1j * _S], [_S, -1j * _S]], dtype=np.complex128),
}


@dataclass(frozen=True)
class MeasurementBasis:
    """Single-qubit projective basis; outcome 0 is the +1 eigenvector.

    ``rotated(theta)`` measures along ``cos θ|0> + sin θ|1>`` (outcome 0)
    and ``-sin θ|0> + cos θ|1>`` (outcome 1).
    """

    label: str
    theta: float | None = None

    def __post_init__(self):
        if self.label in _BASIS_VECTORS:
            if self.theta is not None:
                raise ArgumentError(f"basis {self.label} takes no angle")
        elif self.label == "rotated":
            if self.theta is None or not 0 <= self.theta < 2 * math.pi:
                raise ArgumentError("rotated basis needs theta in [0, 2π)")
        else:
            raise ArgumentError(f"unknown basis label {self.label!r}")

    @classmethod
    def rotated(cls, theta: float) -> "MeasurementBasis":
        return cls("rotated", float(theta) % (2 * math.pi))

    def vectors(self) -> np.ndarray:
        """Rows are the basis kets for outcome 0 and outcome 1."""
        if self.label == "rotated":
            c, s = math.cos(self.theta), math.sin(self.theta)
            return np.array([[c, s], [-s, c]], dtype=np.complex128)
        return _BASIS_VECTORS[self.label]

    def projectors(self) -> list[np.ndarray]:
        return [np.outer(v, v.conj()) for v in self.vectors()]

    def probabilities(self, rho) -> np.ndarray:
        """Born probabilities ``tr(rho P_i)``."""
        rho = validate_density(rho)
        if rho.n_qubits != 1:
            raise DimensionError("only single-qubit measurements are supported")
        p = np.array([np.trace(rho.matrix @ proj).real for proj in self.projectors()])
        p = np.clip(p, 0.0, 1.0)
        return p / p.sum()

    def __str__(self):
        return self.label if self.theta is None else f"rotated({self.theta:.6g})"


Z_BASIS = MeasurementBasis("Z")
X_BASIS = MeasurementBasis("X")
Y_BASIS = MeasurementBasis("Y")


@dataclass(frozen=True)
class OutcomeCounts:
    basis: MeasurementBasis
    counts: Mapping[int, int]
    total: int

    def __post_init__(self):
        if self.total < 1:
            raise ArgumentError("total must be positive")
        if any(k not in (0, 1) or v < 0 for k, v in self.counts.items()):
            raise ArgumentError("counts must map outcomes 0/1 to non-negative integers")
        if sum(self.counts.values()) != self.total:
            raise ArgumentError("counts do not sum to total")

    @classmethod
    def from_n0(cls, basis: MeasurementBasis, n0: int, total: int) -> "OutcomeCounts":
        return cls(basis, {0: int(n0), 1: int(total - n0)}, int(total))

    def frequency(self, outcome: int = 0) -> float:
        return self.counts.get(outcome, 0) / self.total


def measure_copies(rho, basis: MeasurementBasis, n: int, seed=0) -> OutcomeCounts:
    """Measure ``n`` identical copies of a single-qubit state in ``basis``."""
    if n < 1:
        raise ArgumentError("need at least one copy")
    p0 = basis.probabilities(rho)[0]
    rng = stream(seed)
    n0 = int(rng.binomial(n, p0))
    return OutcomeCounts.from_n0(basis, n0, n)


def exact_counts(rho, basis: MeasurementBasis, n: int) -> OutcomeCounts:
    """Counts rounded from the exact Born probabilities (the many-copy limit)."""
    p0 = basis.probabilities(rho)[0]
    return OutcomeCounts.from_n0(basis, round(p0 * n), n)


@dataclass(frozen=True)
class PauliEstimates:
    ex: float
    ey: float
    ez: float
    n_per_basis: int

    @property
    def bloch(self) -> np.ndarray:
        return np.array([self.ex, self.ey, self.ez])


def _expectation(c: OutcomeCounts) -> float:
    return (c.counts.get(0, 0) - c.counts.get(1, 0)) / c.total


def pauli_estimates(cx: OutcomeCounts, cy: OutcomeCounts, cz: OutcomeCounts) -> PauliEstimates:
    """Sample means ``(n+ - n-)/total`` of X, Y and Z."""
    for c, want in ((cx, "X"), (cy, "Y"), (cz, "Z")):
        if c.basis.label != want:
            raise ArgumentError(f"expected {want}-basis counts, got {c.basis}")
    n = min(cx.total, cy.total, cz.total)
    return PauliEstimates(_expectation(cx), _expectation(cy), _expectation(cz), n)


def pauli_matrix(ex: float, ey: float, ez: float) -> np.ndarray:
    """``(I + ex X + ey Y + ez Z) / 2``."""
    return 0.5 * (I2 + ex * PAULI_X + ey * PAULI_Y + ez * PAULI_Z)


def exact_expectations(rho) -> tuple[float, float, float]:
    rho = validate_density(rho)
    m = rho.matrix
    return tuple(float(np.trace(p @ m).real) for p in (PAULI_X, PAULI_Y, PAULI_Z))


def project_to_physical(m) -> DensityMatrix:
    """Clip negative eigenvalues to zero and renormalize the spectrum."""
    m = as_matrix(m.matrix if isinstance(m, DensityMatrix) else m)
    if hermiticity_error(m) > 1e-6:
        raise NotHermitianError("cannot project a non-Hermitian estimate")
    if abs(np.trace(m) - 1.0) > 1e-6:
        raise TraceError(f"estimate has trace {np.trace(m).real:.9g}, expected 1")
    lam, vecs = hermitian_eigh(m)
    lam = np.clip(lam, 0.0, None)
    lam = lam / lam.sum()
    out = (vecs * lam) @ vecs.conj().T
    return DensityMatrix(0.5 * (out + out.conj().T))


def trace_distance(a, b) -> float:
    """Half the trace norm of ``a - b``."""
    a = as_matrix(a.matrix if isinstance(a, DensityMatrix) else a)
    b = as_matrix(b.matrix if isinstance(b, DensityMatrix) else b)
    return 0.5 * float(np.sum(np.abs(hermitian_eigenvalues(a - b))))


@dataclass(frozen=True)
class TomographyResult:
    rho_hat: DensityMatrix
    raw: np.ndarray
    trace_distance_to_truth: float | None = None


def reconstruct_density(est: PauliEstimates, truth=None) -> TomographyResult:
    raw = pauli_matrix(est.ex, est.ey, est.ez)
    raw.setflags(write=False)
    rho_hat = project_to_physical(raw)
    dist = None if truth is None else trace_distance(rho_hat, validate_density(truth))
    return TomographyResult(rho_hat, raw, dist)


def tomography_run(true_state, n_per_basis: int, seed) -> TomographyResult:
    """Measure ``n_per_basis`` copies in each of X, Y, Z and reconstruct."""
    rng = stream(seed)
    counts = [measure_copies(true_state, b, n_per_basis, rng) for b in (X_BASIS, Y_BASIS, Z_BASIS)]
    return reconstruct_density(pauli_estimates(*counts), truth=true_state)


@dataclass(frozen=True)
class ConvergenceRow:
    n_per_basis: int
    mean_trace_distance: float
    std_trace_distance: float
    trials: int
    seed: int


def tomography_experiment(
    true_state, n_per_basis: Sequence[int], trials: int, seed: int
) -> list[ConvergenceRow]:
    """Mean/std trace distance of the reconstruction for each copy budget.

    Trial ``t`` at ladder position ``i`` draws from the stream
    ``(seed, i, t)``.
    """
    ns = [int(n) for n in n_per_basis]
    if any(b < a for a, b in zip(ns, ns[1:])):
        raise ArgumentError("n_per_basis must be ascending")
    if trials < 1:
        raise ArgumentError("trials must be positive")
    rho = validate_density(true_state)
    rows = []
    for i, n in enumerate(ns):
        d = np.array(
            [tomography_run(rho, n, stream(seed, i, t)).trace_distance_to_truth for t in range(trials)]
        )
        rows.append(ConvergenceRow(n, float(d.mean()), float(d.std(ddof=1)) if trials > 1 else 0.0, trials, seed))
    return rows


NAMED_STATES = {
    "zero": np.array([[1, 0], [0, 0]], dtype=np.complex128),
    "one": np.array([[0, 0], [0, 1]], dtype=np.complex128),
    "plus": np.full((2, 2), 0.5, dtype=np.complex128),
    "minus": np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=np.complex128),
    "plus_i": np.array([[0.5, -0.5j], [0.5j, 0.5]], dtype=np.complex128),
    "mixed": 0.5 * I2,
}


def named_state(name: str) -> DensityMatrix:
    try:
        return DensityMatrix(NAMED_STATES[name])
    except KeyError:
        raise ArgumentError(f"unknown state {name!r}; choose from {sorted(NAMED_STATES)}") from None
