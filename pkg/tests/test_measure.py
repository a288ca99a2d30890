import math

import numpy as np
import pytest

from qinfo.errors import ArgumentError, DimensionError, NotHermitianError
from qinfo.measure import (
    X_BASIS,
    Y_BASIS,
    Z_BASIS,
    MeasurementBasis,
    OutcomeCounts,
    PauliEstimates,
    exact_counts,
    exact_expectations,
    measure_copies,
    named_state,
    pauli_estimates,
    pauli_matrix,
    project_to_physical,
    reconstruct_density,
    tomography_experiment,
    trace_distance,
)
from qinfo.qcore import DensityMatrix, random_density_matrix

ZERO = np.diag([1.0, 0.0])
PLUS = np.full((2, 2), 0.5)
MIXED = np.eye(2) / 2


def bloch_oracle_projection(r):
    """Closed-form eigen-clip of ½(I + r·σ): eigenvalues (1 ± |r|)/2 share r's axis."""
    norm = np.linalg.norm(r)
    return r / norm if norm > 1 else r


def bloch_of(rho):
    m = np.asarray(rho)
    return np.array([2 * m[0, 1].real, -2 * m[0, 1].imag, (m[0, 0] - m[1, 1]).real])


class TestBasis:
    def test_rotated_range(self):
        with pytest.raises(ArgumentError):
            MeasurementBasis("rotated", 7.0)
        assert MeasurementBasis.rotated(-0.5).theta == pytest.approx(2 * math.pi - 0.5)

    def test_unknown(self):
        with pytest.raises(ArgumentError):
            MeasurementBasis("W")

    @pytest.mark.parametrize("basis", [Z_BASIS, X_BASIS, Y_BASIS, MeasurementBasis.rotated(0.3)])
    def test_projectors_complete(self, basis):
        p0, p1 = basis.projectors()
        np.testing.assert_allclose(p0 + p1, np.eye(2), atol=1e-15)
        np.testing.assert_allclose(p0 @ p1, 0, atol=1e-15)

    def test_outcome_zero_is_plus_eigenvector(self):
        for basis, pauli in ((X_BASIS, [[0, 1], [1, 0]]), (Y_BASIS, [[0, -1j], [1j, 0]]), (Z_BASIS, [[1, 0], [0, -1]])):
            v = basis.vectors()[0]
            np.testing.assert_allclose(np.array(pauli) @ v, v, atol=1e-15)


class TestMeasureCopies:
    def test_eigenstate(self):
        c = measure_copies(ZERO, Z_BASIS, 1000, seed=3)
        assert c.counts == {0: 1000, 1: 0}

    @pytest.mark.parametrize("state, basis", [(PLUS, Z_BASIS), (MIXED, X_BASIS)])
    def test_half_frequency(self, state, basis):
        # binomial(1e4, 0.5): 99.9% two-sided half-width is 3.29 * 0.005 = 0.0165
        for seed in range(20):
            assert abs(measure_copies(state, basis, 10_000, seed).frequency(0) - 0.5) < 0.02

    def test_deterministic(self):
        rho = random_density_matrix(1, np.random.default_rng(0))
        assert measure_copies(rho, Y_BASIS, 500, 42) == measure_copies(rho, Y_BASIS, 500, 42)

    def test_multi_qubit_rejected(self):
        with pytest.raises(DimensionError):
            measure_copies(np.eye(4) / 4, Z_BASIS, 10)

    def test_needs_copies(self):
        with pytest.raises(ArgumentError):
            measure_copies(ZERO, Z_BASIS, 0)

    def test_born_convergence(self, rng):
        n = 100_000
        within = 0
        runs = 200
        for seed in range(runs):
            rho = random_density_matrix(1, rng)
            ok = True
            for basis in (X_BASIS, Y_BASIS, Z_BASIS, MeasurementBasis.rotated(rng.uniform(0, 2 * math.pi))):
                p = np.trace(rho.matrix @ basis.projectors()[0]).real
                se = math.sqrt(max(p * (1 - p), 1e-12) / n)
                ok &= abs(measure_copies(rho, basis, n, seed).frequency(0) - p) < 5 * se
            within += ok
        assert within / runs >= 0.99


class TestPauliEstimates:
    def test_all_plus(self):
        cs = [OutcomeCounts.from_n0(b, 10, 10) for b in (X_BASIS, Y_BASIS, Z_BASIS)]
        est = pauli_estimates(*cs)
        assert (est.ex, est.ey, est.ez) == (1, 1, 1)

    def test_arithmetic(self):
        cs = [OutcomeCounts.from_n0(X_BASIS, 1, 2), OutcomeCounts.from_n0(Y_BASIS, 1, 2), OutcomeCounts.from_n0(Z_BASIS, 750, 1000)]
        assert pauli_estimates(*cs).ez == 0.5

    def test_exact_counts_plus(self):
        cs = [exact_counts(PLUS, b, 1000) for b in (X_BASIS, Y_BASIS, Z_BASIS)]
        est = pauli_estimates(*cs)
        assert (est.ex, est.ey, est.ez) == (1.0, 0.0, 0.0)

    def test_basis_mismatch(self):
        c = OutcomeCounts.from_n0(Z_BASIS, 1, 2)
        with pytest.raises(ArgumentError):
            pauli_estimates(c, c, c)

    def test_counts_must_sum(self):
        with pytest.raises(ArgumentError):
            OutcomeCounts(Z_BASIS, {0: 1, 1: 1}, 3)


class TestReconstruct:
    @pytest.mark.parametrize(
        "bloch, want", [((0, 0, 1), ZERO), ((1, 0, 0), PLUS), ((0, 0, 0), MIXED)]
    )
    def test_poles(self, bloch, want):
        res = reconstruct_density(PauliEstimates(*bloch, n_per_basis=1))
        np.testing.assert_allclose(res.rho_hat.matrix, want, atol=1e-12)

    def test_exact_expansion(self, rng):
        for _ in range(100):
            rho = random_density_matrix(1, rng)
            np.testing.assert_allclose(pauli_matrix(*exact_expectations(rho)), rho.matrix, atol=1e-12, rtol=0)


class TestProjection:
    def test_idempotent(self, rng):
        for _ in range(50):
            rho = random_density_matrix(1, rng)
            assert np.max(np.abs(project_to_physical(rho).matrix - rho.matrix)) <= 1e-12

    def test_clip(self):
        out = project_to_physical(0.5 * (np.eye(2) + 1.2 * np.diag([1, -1])))
        np.testing.assert_allclose(out.matrix, ZERO, atol=1e-12)

    def test_against_eigen_clip_oracle(self, rng):
        for _ in range(200):
            r = rng.standard_normal(3)
            r *= 1.05 / np.linalg.norm(r)
            out = project_to_physical(pauli_matrix(*r))
            got = bloch_of(out.matrix)
            assert abs(np.linalg.norm(got) - 1) < 1e-12
            np.testing.assert_allclose(got, bloch_oracle_projection(r), atol=1e-12)

    def test_never_moves_away_from_truth(self, rng):
        for _ in range(1000):
            truth = random_density_matrix(1, rng)
            r = rng.standard_normal(3)
            r *= rng.uniform(1.0001, 1.5) / np.linalg.norm(r)
            raw = pauli_matrix(*r)
            assert trace_distance(project_to_physical(raw), truth) <= trace_distance(raw, truth) + 1e-12

    def test_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            project_to_physical([[0.5, 1], [0, 0.5]])


def test_trace_distance_orthogonal_and_bounds(rng):
    assert trace_distance(ZERO, np.diag([0.0, 1.0])) == pytest.approx(1.0)
    for _ in range(50):
        a, b = random_density_matrix(1, rng), random_density_matrix(1, rng)
        assert 0 <= trace_distance(a, b) <= 1
        # Bloch-ball identity: D = |r_a - r_b| / 2
        assert trace_distance(a, b) == pytest.approx(np.linalg.norm(bloch_of(a.matrix) - bloch_of(b.matrix)) / 2, abs=1e-12)


class TestTomographyExperiment:
    def test_zero_state_accuracy(self):
        (row,) = tomography_experiment(named_state("zero"), [10_000], 50, seed=11)
        assert row.mean_trace_distance < 0.03

    def test_mixed_trend(self):
        rows = tomography_experiment(named_state("mixed"), [256, 16384], 50, seed=5)
        assert rows[1].mean_trace_distance < rows[0].mean_trace_distance

    @pytest.mark.parametrize("name", ["zero", "plus", "plus_i", "mixed"])
    def test_inverse_sqrt_scaling(self, name):
        rows = tomography_experiment(named_state(name), [256, 4096], 50, seed=2)
        assert 2 <= rows[0].mean_trace_distance / rows[1].mean_trace_distance <= 8

    def test_monotone_ladder(self):
        rows = tomography_experiment(named_state("plus"), [16, 64, 256, 1024, 4096], 40, seed=9)
        means = [r.mean_trace_distance for r in rows]
        assert all(b < a for a, b in zip(means, means[1:]))

    def test_deterministic_and_shape(self):
        a = tomography_experiment(named_state("plus"), [64, 256], 5, seed=7)
        assert a == tomography_experiment(named_state("plus"), [64, 256], 5, seed=7)
        assert [r.n_per_basis for r in a] == [64, 256] and all(r.trials == 5 and r.seed == 7 for r in a)

    def test_requires_ascending(self):
        with pytest.raises(ArgumentError):
            tomography_experiment(named_state("plus"), [256, 64], 5, seed=0)
