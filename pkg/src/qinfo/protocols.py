"""Toy BB84 and three-stage protocol runs over an ideal in-process channel.

These are reconstructions at the level of textbook descriptions, meant to
contrast two-basis sifting (BB84) with a single shared basis scrambled by
each user's secret commuting rotation (three-stage). There is no error
correction, privacy amplification or loss model.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from qinfo._rng import stream
from qinfo.errors import ArgumentError
from qinfo.measure import X_BASIS, Z_BASIS, MeasurementBasis

_BASES = (Z_BASIS, X_BASIS)


def rotation(theta: float) -> np.ndarray:
    """Real planar rotation; ``R(a) R(b) = R(a + b)``."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def _prepare(bit: int, basis: MeasurementBasis) -> np.ndarray:
    return basis.vectors()[bit].copy()


def _measure(ket: np.ndarray, basis: MeasurementBasis, rng: np.random.Generator) -> tuple[int, np.ndarray]:
    """Born-rule measurement; returns the outcome and the collapsed ket."""
    vecs = basis.vectors()
    p0 = min(1.0, abs(np.vdot(vecs[0], ket)) ** 2)
    outcome = 0 if rng.random() < p0 else 1
    return outcome, vecs[outcome].copy()


def _bitstring(bits) -> str:
    return "".join(str(int(b)) for b in bits)


@dataclass(frozen=True)
class Bb84Transcript:
    n_sent: int
    sifted_key_a: str
    sifted_key_b: str
    qber: float
    eavesdropped: bool
    sample_indices: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.sifted_key_a) != len(self.sifted_key_b):
            raise ValueError("sifted keys differ in length")

    @property
    def sifted_fraction(self) -> float:
        return len(self.sifted_key_a) / self.n_sent

    def to_json(self) -> dict:
        d = asdict(self)
        d["sample_indices"] = list(self.sample_indices)
        return d


def run_bb84(n: int, eavesdrop: bool = False, seed: int = 0) -> Bb84Transcript:
    """Prepare, (optionally) intercept-resend, measure, sift, estimate QBER.

    Sender and receiver each pick Z or X uniformly per qubit. The
    eavesdropper measures every qubit in a uniformly random basis and
    resends the collapsed state. QBER is computed on a random half of the
    sifted key (the disclosed sample).
    """
    if n < 8:
        raise ArgumentError("BB84 needs at least 8 qubits")
    rng = stream(seed)
    bits_a = rng.integers(0, 2, n)
    basis_a = rng.integers(0, 2, n)
    basis_b = rng.integers(0, 2, n)
    basis_e = rng.integers(0, 2, n)
    bits_b = np.empty(n, dtype=int)
    for i in range(n):
        ket = _prepare(int(bits_a[i]), _BASES[basis_a[i]])
        if eavesdrop:
            _, ket = _measure(ket, _BASES[basis_e[i]], rng)
        bits_b[i], _ = _measure(ket, _BASES[basis_b[i]], rng)
    keep = basis_a == basis_b
    key_a, key_b = bits_a[keep], bits_b[keep]
    m = key_a.size
    sample = np.sort(rng.choice(m, size=m // 2, replace=False)) if m >= 2 else np.arange(m)
    qber = float(np.mean(key_a[sample] != key_b[sample])) if sample.size else 0.0
    return Bb84Transcript(
        n_sent=n,
        sifted_key_a=_bitstring(key_a),
        sifted_key_b=_bitstring(key_b),
        qber=qber,
        eavesdropped=bool(eavesdrop),
        sample_indices=tuple(int(i) for i in sample),
    )


@dataclass(frozen=True)
class ThreeStageTranscript:
    message: str
    decoded: str
    stage_states: tuple[tuple[np.ndarray, np.ndarray, np.ndarray], ...]
    theta_a: tuple[float, ...] = field(default=())
    theta_b: tuple[float, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "message": self.message,
            "decoded": self.decoded,
            "stage_states": [
                [[[float(z.real), float(z.imag)] for z in ket] for ket in stages] for stages in self.stage_states
            ],
            "theta_a": list(self.theta_a),
            "theta_b": list(self.theta_b),
        }


def run_three_stage(message: str, seed: int = 0) -> ThreeStageTranscript:
    """Per bit: ``R(θA)|b>`` → ``R(θB)`` → ``R(-θA)`` in flight, then ``R(-θB)`` and Z.

    Fresh angles are drawn per bit. Because the rotations commute, the
    sender's and receiver's keys cancel and the receiver recovers ``|b>``.
    """
    if not message or set(message) - {"0", "1"}:
        raise ArgumentError(f"message must be a non-empty bit string, got {message!r}")
    rng = stream(seed)
    stages, decoded, tas, tbs = [], [], [], []
    for ch in message:
        ta, tb = rng.uniform(0, 2 * math.pi, 2)
        ket = _prepare(int(ch), Z_BASIS)
        s1 = rotation(ta) @ ket
        s2 = rotation(tb) @ s1
        s3 = rotation(-ta) @ s2
        out, _ = _measure(rotation(-tb) @ s3, Z_BASIS, rng)
        stages.append((s1, s2, s3))
        decoded.append(out)
        tas.append(float(ta))
        tbs.append(float(tb))
    return ThreeStageTranscript(message, _bitstring(decoded), tuple(stages), tuple(tas), tuple(tbs))
