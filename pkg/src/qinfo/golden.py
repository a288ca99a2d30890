"""Golden values from the worked examples, recomputed end to end."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from qinfo.classical import decode_fraction, encode_fraction
from qinfo.encode import TableCode, decode_table, encode_table, misalignment_sweep
from qinfo.entropy import Ensemble, informational_entropy, partial_entropy, von_neumann_entropy
from qinfo.measure import Z_BASIS, OutcomeCounts, exact_expectations, pauli_matrix
from qinfo.protocols import run_bb84, run_three_stage
from qinfo.qcore import DensityMatrix, PureState, hermitian_eigenvalues, partial_trace, pure_to_density

ROUNDED_TOL = 0.005
EXACT_TOL = 1e-9

EXAMPLE1 = np.diag([0.75, 0.25])
BELL = np.array([[0.5, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]])
EXAMPLE3 = np.array([[0.71, 0.15], [0.15, 0.29]])
CASE1 = [(0.3, np.full((2, 2), 0.5)), (0.7, np.diag([0.8, 0.2]))]
_R2 = math.sqrt(2) / 3
CASE2 = [(0.316, np.array([[2 / 3, _R2], [_R2, 1 / 3]])), (0.684, np.diag([0.731, 0.269]))]


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    computed: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(abs(self.expected - self.computed) <= self.tolerance)

    def as_dict(self) -> dict:
        return {**asdict(self), "passed": self.passed}


@dataclass(frozen=True)
class PaperCheckReport:
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def paper_check() -> PaperCheckReport:
    checks: list[Check] = []

    def add(name, expected, computed, tol):
        checks.append(Check(name, float(expected), float(computed), float(tol)))

    # entropy / qcore
    add("example1.s_n", 0.811, von_neumann_entropy(EXAMPLE1), ROUNDED_TOL)

    bell_state = PureState.from_amplitudes(1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2))
    bell = pure_to_density(bell_state)
    add("example2.density_matches_matrix", 0.0, np.max(np.abs(bell.matrix - BELL)), EXACT_TOL)
    lam = hermitian_eigenvalues(bell)
    for i, want in enumerate((1.0, 0.0, 0.0, 0.0)):
        add(f"example2.eigenvalue[{i}]", want, lam[i], EXACT_TOL)
    add("example2.s_n", 0.0, von_neumann_entropy(bell), EXACT_TOL)
    for q in (0, 1):
        red = partial_trace(bell, q)
        add(f"example2.reduced[{q}].max_dev_from_I/2", 0.0, np.max(np.abs(red.matrix - 0.5 * np.eye(2))), EXACT_TOL)
        add(f"example2.reduced[{q}].s_n", 1.0, von_neumann_entropy(red), EXACT_TOL)
        add(f"example2.reduced[{q}].s_inf", 1.0, informational_entropy(red), EXACT_TOL)
    add("example2.s_inf", 1.0, informational_entropy(bell), EXACT_TOL)

    rho3 = DensityMatrix(EXAMPLE3)
    s_inf3, s_n3 = informational_entropy(rho3), von_neumann_entropy(rho3)
    add("example3.s_inf", 0.868, s_inf3, ROUNDED_TOL)
    add("example3.s_n", 0.798, s_n3, ROUNDED_TOL)
    add("example3.gap", 0.070, s_inf3 - s_n3, 0.007)
    lam3 = hermitian_eigenvalues(rho3)
    add("example3.eigenvalue[0]", 0.758, lam3[0], 0.001)
    add("example3.eigenvalue[1]", 0.242, lam3[1], 0.001)

    s_p1, mix1 = partial_entropy(Ensemble.from_pairs(CASE1))
    add("case1.mixture_max_dev", 0.0, np.max(np.abs(mix1.matrix - EXAMPLE3)), ROUNDED_TOL)
    add("case1.mixed_component.s_inf", 0.722, informational_entropy(CASE1[1][1]), ROUNDED_TOL)
    add("case1.s_p", 0.805, s_p1, ROUNDED_TOL)
    s_p2, _ = partial_entropy(Ensemble.from_pairs(CASE2))
    add("case2.pure_component.s_inf", 0.918, informational_entropy(CASE2[0][1]), ROUNDED_TOL)
    add("case2.mixed_component.s_inf", 0.84, informational_entropy(CASE2[1][1]), ROUNDED_TOL)
    add("case2.s_p", 0.865, s_p2, ROUNDED_TOL)

    # measure: the Pauli expansion is exact given exact expectations
    rebuilt = pauli_matrix(*exact_expectations(rho3))
    add("pauli_expansion.example3_max_dev", 0.0, np.max(np.abs(rebuilt - EXAMPLE3)), EXACT_TOL)

    # encode: table row 101 -> sqrt(5/8)|0> - sqrt(3/8)|1>
    amps = encode_table(TableCode.from_bits("101"), sign_b=-1).amplitudes
    add("table.101.a", math.sqrt(5) / math.sqrt(8), amps[0].real, EXACT_TOL)
    add("table.101.b", -math.sqrt(3) / math.sqrt(8), amps[1].real, EXACT_TOL)
    add("table.000.a", 0.0, encode_table(TableCode(3, 0)).amplitudes[0].real, EXACT_TOL)
    add("table.100.a", math.sqrt(0.5), encode_table(TableCode(3, 4)).amplitudes[0].real, EXACT_TOL)
    exact = OutcomeCounts.from_n0(Z_BASIS, 5, 8)
    add("table.decode_5/8", 5, decode_table(exact, 3).j_hat, 0)
    add("misalignment.theta0.s_inf", 0.0, misalignment_sweep([0.0], 100, 0)[0].s_inf_bits, 1e-12)

    # classical: dot-prefixed binary fraction and E(W) -> V in the noiseless limit
    add("classical.101.value", 0.625, encode_fraction("101").value, EXACT_TOL)
    add("classical.101.roundtrip", 1.0, float(decode_fraction(0.625, 3) == "101"), 0)

    # protocols: ideal-channel sanity
    add("bb84.ideal.qber", 0.0, run_bb84(256, False, 0).qber, 0)
    ts = run_three_stage("1011001110001111", 0)
    add("three_stage.ideal.bit_errors", 0, sum(a != b for a, b in zip(ts.message, ts.decoded)), 0)

    return PaperCheckReport(tuple(checks))
