"""Entropy measures in bits.

``informational_entropy`` is the Shannon entropy of a density matrix's
diagonal, i.e. of the outcome distribution a receiver measuring in the
computational basis would see. Unlike the von Neumann entropy it depends
on the receiver's basis, and it is nonzero for pure states that are not
aligned with that basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from qinfo.errors import ConsistencyError, DimensionError, ValidationError
from qinfo.qcore import VALIDATION_TOL, DensityMatrix, validate_density

ZERO_PROB = 1e-12


def _entropy_bits(p: np.ndarray) -> float:
    p = np.where(p < ZERO_PROB, 0.0, p)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz))) + 0.0


def as_prob_vector(p) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise ValidationError("probabilities must be a non-empty finite vector")
    if np.any(p < -VALIDATION_TOL) or np.any(p > 1 + VALIDATION_TOL):
        raise ValidationError("probabilities must lie in [0, 1]")
    if abs(p.sum() - 1.0) > VALIDATION_TOL:
        raise ValidationError(f"probabilities sum to {p.sum()!r}, expected 1")
    return np.clip(p, 0.0, 1.0)


def shannon_entropy(p) -> float:
    """``-sum p log2 p`` with ``0 log 0 = 0``."""
    return _entropy_bits(as_prob_vector(p))


def von_neumann_entropy(rho) -> float:
    """Shannon entropy of the eigenvalue spectrum."""
    rho = validate_density(rho)
    lam = rho.spectrum()
    return _entropy_bits(np.clip(lam, 0.0, None))


def informational_entropy(rho) -> float:
    """Shannon entropy of the diagonal of ``rho`` in the computational basis."""
    rho = validate_density(rho)
    return _entropy_bits(np.clip(rho.diagonal(), 0.0, None))


@dataclass(frozen=True)
class EnsembleComponent:
    weight: float
    state: DensityMatrix
    kind: str  # "pure" | "mixed", derived from the spectrum


@dataclass(frozen=True)
class Ensemble:
    """Weighted mixture of density matrices on the same number of qubits."""

    components: tuple[EnsembleComponent, ...]

    def __post_init__(self):
        if not self.components:
            raise ValidationError("ensemble needs at least one component")
        weights = np.array([c.weight for c in self.components])
        if np.any(weights <= 0) or np.any(weights > 1 + VALIDATION_TOL):
            raise ValidationError("ensemble weights must lie in (0, 1]")
        if abs(weights.sum() - 1.0) > VALIDATION_TOL:
            raise ValidationError(f"ensemble weights sum to {weights.sum()!r}, expected 1")
        sizes = {c.state.n_qubits for c in self.components}
        if len(sizes) != 1:
            raise DimensionError(f"components span different qubit counts {sorted(sizes)}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, object]]) -> "Ensemble":
        comps = []
        for w, state in pairs:
            rho = validate_density(state)
            comps.append(EnsembleComponent(float(w), rho, "pure" if rho.is_pure() else "mixed"))
        return cls(tuple(comps))

    @property
    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.components])

    @property
    def n_qubits(self) -> int:
        return self.components[0].state.n_qubits

    def mixture(self) -> DensityMatrix:
        m = sum(c.weight * c.state.matrix for c in self.components)
        # weights only sum to 1 within tolerance
        return DensityMatrix(m / np.trace(m).real)


def partial_entropy(e: Ensemble) -> tuple[float, DensityMatrix]:
    """Weighted sum of component informational entropies, and the mixture.

    A receiver who knows the ensemble decomposition is left with
    ``sum_i p_i S_inf(rho_i)``; each pure component still contributes its
    (basis-dependent) diagonal entropy.
    """
    if not isinstance(e, Ensemble):
        e = Ensemble.from_pairs(e)
    s_p = sum(c.weight * informational_entropy(c.state) for c in e.components)
    return float(s_p), e.mixture()


@dataclass(frozen=True)
class EntropyReport:
    s_inf: float
    s_n: float
    gap: float
    s_p: float | None = None
    n_qubits: int = 1

    def as_dict(self) -> dict:
        return {"s_inf": self.s_inf, "s_n": self.s_n, "gap": self.gap, "s_p": self.s_p}


def entropy_report(rho, ensemble: Ensemble | None = None, mixture_tol: float = 1e-3) -> EntropyReport:
    """Bundle S_inf, S_n, their gap and (optionally) the partial entropy.

    Raises :class:`ConsistencyError` if ``ensemble``'s mixture differs from
    ``rho`` by more than ``mixture_tol`` in any entry.
    """
    rho = validate_density(rho)
    s_inf = informational_entropy(rho)
    s_n = von_neumann_entropy(rho)
    s_p = None
    if ensemble is not None:
        s_p, mix = partial_entropy(ensemble)
        if mix.dim != rho.dim:
            raise ConsistencyError("ensemble and matrix dimensions differ")
        diff = float(np.max(np.abs(mix.matrix - rho.matrix)))
        if diff > mixture_tol:
            raise ConsistencyError(f"ensemble mixture differs from matrix by {diff:.3g} > {mixture_tol}")
    return EntropyReport(s_inf=s_inf, s_n=s_n, gap=s_inf - s_n, s_p=s_p, n_qubits=rho.n_qubits)
