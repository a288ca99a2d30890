"""Amplitude-encoding schemes and their repeated-copy decoders.

Three ways for a sender to put a message into the real amplitudes of
``a|0> + b|1>``:

* ratio: ``a/b = ±m``
* probability ratio: ``a²/b² = m``
* table: ``a² = j / 2**k`` for a ``k``-bit symbol ``j``

The receiver only measures in Z, so decoders recover ``|a|²``; the sign
of ``b`` is agreed out of band and never decoded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import binom

from qinfo._rng import stream
from qinfo.entropy import informational_entropy
from qinfo.errors import ArgumentError
from qinfo.measure import Z_BASIS, OutcomeCounts, measure_copies
from qinfo.qcore import PureState, pure_to_density


@dataclass(frozen=True)
class RatioMessage:
    m: float
    sign_b: int = 1

    def __post_init__(self):
        if not math.isfinite(self.m) or self.m <= 0:
            raise ArgumentError(f"m must be finite and positive, got {self.m!r}")
        if self.sign_b not in (1, -1):
            raise ArgumentError("sign_b must be +1 or -1")


@dataclass(frozen=True)
class TableCode:
    k: int
    j: int

    def __post_init__(self):
        if self.k < 1:
            raise ArgumentError("k must be a positive bit count")
        if not 0 <= self.j < 2**self.k:
            raise ArgumentError(f"j={self.j} out of range for k={self.k}")

    @classmethod
    def from_bits(cls, bits: str) -> "TableCode":
        if not bits or set(bits) - {"0", "1"}:
            raise ArgumentError(f"not a bit string: {bits!r}")
        return cls(len(bits), int(bits, 2))

    @property
    def bits(self) -> str:
        return format(self.j, f"0{self.k}b")


@dataclass(frozen=True)
class DecodedSymbol:
    j_hat: int
    confidence: float
    copies_used: int
    k: int

    @property
    def bits(self) -> str:
        return format(self.j_hat, f"0{self.k}b")


def encode_ratio(msg: RatioMessage) -> PureState:
    """``a = m/√(1+m²)``, ``b = ±1/√(1+m²)``."""
    norm = math.sqrt(1 + msg.m**2)
    return PureState.from_amplitudes(msg.m / norm, msg.sign_b / norm)


def encode_prob(msg: RatioMessage) -> PureState:
    """``a = √(m/(1+m))``, ``b = ±√(1/(1+m))``."""
    return PureState.from_amplitudes(math.sqrt(msg.m / (1 + msg.m)), msg.sign_b * math.sqrt(1 / (1 + msg.m)))


def decode_ratio(psi: PureState) -> float:
    a, b = psi.amplitudes.real
    return float(a / b)


def encode_table(code: TableCode, sign_b: int = 1) -> PureState:
    """``a = √(j/2^k)``, ``b = sign_b·√(1 - j/2^k)``."""
    if sign_b not in (1, -1):
        raise ArgumentError("sign_b must be +1 or -1")
    q = code.j / 2**code.k
    return PureState.from_amplitudes(math.sqrt(q), sign_b * math.sqrt(1 - q))


def _nearest_grid(n0, n: int, k: int):
    """Nearest ``j`` to ``2^k n0/n`` (ties to the lower j), clamped to the table.

    Exact integer arithmetic: ``ceil(x - 1/2)`` with ``x = 2^k n0 / n``.
    """
    num = 2 ** (k + 1) * np.asarray(n0, dtype=np.int64) - n
    j = -((-num) // (2 * n))
    return np.clip(j, 0, 2**k - 1)


def decode_table(counts: OutcomeCounts, k: int) -> DecodedSymbol:
    """Decode a ``k``-bit table symbol from Z-basis counts.

    ``confidence`` is the exact binomial probability that ``counts.total``
    copies of the state for ``j_hat`` decode back to ``j_hat``.
    """
    if counts.basis.label != "Z":
        raise ArgumentError("table decoding needs computational-basis counts")
    if k < 1:
        raise ArgumentError("k must be positive")
    n = counts.total
    j_hat = int(_nearest_grid(counts.counts.get(0, 0), n, k))
    region = np.flatnonzero(_nearest_grid(np.arange(n + 1), n, k) == j_hat)
    p = j_hat / 2**k
    conf = float(binom.cdf(region[-1], n, p) - binom.cdf(region[0] - 1, n, p))
    return DecodedSymbol(j_hat, min(max(conf, 0.0), 1.0), n, k)


def copies_needed(k: int, delta: float) -> int:
    """Copies guaranteeing table decoding succeeds with probability ``>= 1 - delta``.

    Smallest ``n`` with ``2 exp(-2 n Δ²) <= delta`` for grid half-spacing
    ``Δ = 2^-(k+1)`` (Hoeffding). Never less than one copy.
    """
    if k < 1:
        raise ArgumentError("k must be positive")
    if not 0 < delta < 1:
        raise ArgumentError("delta must lie in (0, 1)")
    half = 2.0 ** -(k + 1)
    return max(1, math.ceil(math.log(2 / delta) / (2 * half**2)))


def decode_trials(code: TableCode, n: int, trials: int, seed: int, sign_b: int = 1) -> float:
    """Fraction of ``trials`` independent ``n``-copy decodes that recover ``code.j``."""
    rho = pure_to_density(encode_table(code, sign_b))
    hits = 0
    for t in range(trials):
        counts = measure_copies(rho, Z_BASIS, n, stream(seed, n, t))
        hits += decode_table(counts, code.k).j_hat == code.j
    return hits / trials


@dataclass(frozen=True)
class SweepRow:
    """One row of a sweep or ladder table.

    ``theta_or_n`` is the sender angle (misalignment sweep) or the copy
    count (decode ladder). ``success_rate`` is, respectively, how often the
    receiver's best constant guess is right, or the decode success rate.
    """

    theta_or_n: float
    s_inf_bits: float
    success_rate: float
    copies: int
    seed: int

    @property
    def info_proxy(self) -> float:
        return 1.0 - self.success_rate


def misalignment_sweep(thetas: Sequence[float], n: int, seed: int) -> list[SweepRow]:
    """Send ``cos θ|0> + sin θ|1>``, measure ``n`` copies in Z, per angle.

    At ``θ = 0`` the state lies on the receiver's basis: the diagonal
    entropy is zero and every outcome is predictable.
    """
    rows = []
    for i, theta in enumerate(thetas):
        if not 0 <= theta <= math.pi / 2:
            raise ArgumentError(f"theta={theta!r} outside [0, π/2]")
        psi = PureState.from_amplitudes(math.cos(theta), math.sin(theta))
        rho = pure_to_density(psi)
        counts = measure_copies(rho, Z_BASIS, n, stream(seed, i))
        f0 = counts.frequency(0)
        rows.append(SweepRow(float(theta), informational_entropy(rho), max(f0, 1 - f0), n, seed))
    return rows


def decode_ladder(code: TableCode, ns: Sequence[int], trials: int, seed: int, sign_b: int = 1) -> list[SweepRow]:
    """Decode success rate of ``code`` as the copy budget grows."""
    s_inf = informational_entropy(pure_to_density(encode_table(code, sign_b)))
    return [SweepRow(int(n), s_inf, decode_trials(code, int(n), trials, seed, sign_b), int(n), seed) for n in ns]
