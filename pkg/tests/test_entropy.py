import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qinfo.entropy import (
    Ensemble,
    entropy_report,
    informational_entropy,
    partial_entropy,
    shannon_entropy,
    von_neumann_entropy,
)
from qinfo.errors import ConsistencyError, DimensionError, ValidationError
from qinfo.qcore import (
    DensityMatrix,
    PureState,
    conjugate,
    partial_trace,
    pure_to_density,
    random_density_matrix,
    random_unitary,
)

EX3 = np.array([[0.71, 0.15], [0.15, 0.29]])
BELL = np.array([[0.5, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]])
CASE1 = [(0.3, [[0.5, 0.5], [0.5, 0.5]]), (0.7, np.diag([0.8, 0.2]))]
R2 = math.sqrt(2) / 3
CASE2 = [(0.316, [[2 / 3, R2], [R2, 1 / 3]]), (0.684, np.diag([0.731, 0.269]))]
H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)


class TestShannon:
    @pytest.mark.parametrize(
        "p, want, tol",
        [((0.5, 0.5), 1.0, 1e-15), ((0.71, 0.29), 0.868, 1e-3), ((1, 0), 0.0, 0.0), ((0.25,) * 4, 2.0, 1e-15)],
    )
    def test_values(self, p, want, tol):
        assert abs(shannon_entropy(p) - want) <= tol

    @pytest.mark.parametrize("p", [(0.5, 0.6), (-0.1, 1.1), (), (np.nan, 1.0)])
    def test_invalid(self, p):
        with pytest.raises(ValidationError):
            shannon_entropy(p)

    def test_tiny_probabilities_are_zero(self):
        # the 1e-13 term is dropped; only the near-1 term remains
        assert shannon_entropy((1 - 1e-13, 1e-13)) < 1e-12

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=16).filter(lambda v: sum(v) > 1e-3))
    def test_bounds(self, raw):
        p = np.array(raw) / sum(raw)
        h = shannon_entropy(p)
        assert -1e-12 <= h <= math.log2(len(p)) + 1e-9


class TestVonNeumann:
    def test_example3(self):
        assert abs(von_neumann_entropy(EX3) - 0.798) < 5e-4

    def test_diagonal_mixture(self):
        assert abs(von_neumann_entropy(np.diag([0.75, 0.25])) - 0.811) < 5e-4

    def test_bell_is_zero(self):
        assert abs(von_neumann_entropy(BELL)) < 1e-9

    def test_unitary_invariance(self, rng):
        for n in (1, 2, 3):
            for _ in range(20):
                rho = random_density_matrix(n, rng)
                u = random_unitary(2**n, rng)
                assert abs(von_neumann_entropy(conjugate(rho, u)) - von_neumann_entropy(rho)) < 1e-6


class TestInformational:
    def test_example3(self):
        want = -0.71 * math.log2(0.71) - 0.29 * math.log2(0.29)
        assert abs(informational_entropy(EX3) - want) < 1e-12
        assert abs(want - 0.868) < 1e-3

    def test_bell_one_bit(self):
        assert abs(informational_entropy(BELL) - 1.0) < 1e-12

    def test_aligned_pure_is_zero(self):
        assert informational_entropy(pure_to_density(PureState.from_amplitudes(1, 0))) == 0.0

    def test_basis_dependence(self):
        plus = pure_to_density(PureState.from_amplitudes(1 / math.sqrt(2), 1 / math.sqrt(2)))
        assert abs(informational_entropy(plus) - 1.0) < 1e-12
        assert abs(informational_entropy(conjugate(plus, H))) < 1e-12
        # von Neumann does not see the change of basis
        assert von_neumann_entropy(plus) < 1e-9


class TestPartialEntropy:
    def test_case1(self):
        e = Ensemble.from_pairs(CASE1)
        assert [c.kind for c in e.components] == ["pure", "mixed"]
        s_p, mix = partial_entropy(e)
        assert abs(s_p - 0.805) < 5e-4
        np.testing.assert_allclose(mix.matrix, EX3, atol=1e-12)

    def test_case1_uses_diagonal_entropy_of_pure_component(self):
        # with S_n per component the pure part would contribute 0 bits
        s_p, _ = partial_entropy(Ensemble.from_pairs(CASE1))
        assert abs(s_p - (0.3 * 1.0 + 0.7 * shannon_entropy((0.8, 0.2)))) < 1e-12

    def test_case2(self):
        e = Ensemble.from_pairs(CASE2)
        assert [c.kind for c in e.components] == ["pure", "mixed"]
        s_p, mix = partial_entropy(e)
        assert abs(s_p - 0.865) < 5e-4
        assert np.max(np.abs(mix.matrix - EX3)) < 2e-3

    def test_single_component(self, rng):
        rho = random_density_matrix(2, rng)
        s_p, mix = partial_entropy(Ensemble.from_pairs([(1.0, rho)]))
        assert s_p == pytest.approx(informational_entropy(rho), abs=1e-15)

    def test_weights_must_sum_to_one(self):
        with pytest.raises(ValidationError):
            Ensemble.from_pairs([(0.3, np.eye(2) / 2), (0.6, np.eye(2) / 2)])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            Ensemble.from_pairs([(0.5, np.eye(2) / 2), (0.5, np.eye(4) / 4)])


class TestReport:
    def test_example3_gap(self):
        rep = entropy_report(EX3)
        assert rep.gap == rep.s_inf - rep.s_n
        assert abs(rep.gap - 0.070) < 1e-3

    def test_pure_diagonal(self):
        rep = entropy_report(np.diag([0, 0, 1, 0]))
        assert (rep.s_inf, rep.gap) == (0.0, 0.0) and abs(rep.s_n) < 1e-12

    def test_with_case1(self):
        rep = entropy_report(EX3, Ensemble.from_pairs(CASE1))
        assert rep.s_p <= rep.s_inf
        assert abs(rep.s_p - 0.805) < 5e-4

    def test_mismatched_ensemble(self):
        with pytest.raises(ConsistencyError):
            entropy_report(np.eye(2) / 2, Ensemble.from_pairs(CASE1))


# -- inequality family over random states ------------------------------------


def random_ensemble(rng):
    k = int(rng.integers(2, 5))
    w = rng.dirichlet(np.ones(k))
    return Ensemble.from_pairs([(wi, random_density_matrix(1, rng)) for wi in w])


def test_bounds_over_random_states(rng):
    for i in range(200):
        n = 1 + i % 3
        s = informational_entropy(random_density_matrix(n, rng))
        assert -1e-9 <= s <= n + 1e-9


def test_subadditivity(rng):
    for _ in range(200):
        rho = random_density_matrix(2, rng)
        joint = informational_entropy(rho)
        parts = informational_entropy(partial_trace(rho, 0)) + informational_entropy(partial_trace(rho, 1))
        assert joint <= parts + 1e-9


def test_concavity(rng):
    for _ in range(200):
        e = random_ensemble(rng)
        s_p, mix = partial_entropy(e)
        assert informational_entropy(mix) >= s_p - 1e-9


def test_dominates_von_neumann(rng):
    for i in range(200):
        rho = random_density_matrix(1 + i % 3, rng)
        assert informational_entropy(rho) >= von_neumann_entropy(rho) - 1e-9
        diag = DensityMatrix(np.diag(rho.diagonal()))
        assert abs(informational_entropy(diag) - von_neumann_entropy(diag)) <= 1e-6


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_report_invariants(seed, n):
    rho = random_density_matrix(n, np.random.default_rng(seed))
    rep = entropy_report(rho)
    assert rep.gap >= -1e-9
    for v in (rep.s_inf, rep.s_n):
        assert -1e-9 <= v <= n + 1e-9
