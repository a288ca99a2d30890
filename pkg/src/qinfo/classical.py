"""Classical analogue: a bit string sent as one noisy real number.

The bits become the binary fraction ``V = 0.b1b2b3...``; the receiver
averages many noisy copies ``W = V + ε`` (``ε`` symmetric about zero) and
rounds the mean back onto the ``2^-k`` grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from qinfo._rng import stream
from qinfo.errors import ArgumentError, PrecisionError

MAX_BITS = 52


def _check_bits(bits: str) -> None:
    if not bits or set(bits) - {"0", "1"}:
        raise ArgumentError(f"not a bit string: {bits!r}")
    if len(bits) > MAX_BITS:
        raise PrecisionError(f"{len(bits)} bits exceeds the {MAX_BITS}-bit exact-representation cap")


@dataclass(frozen=True)
class FractionSignal:
    bits: str
    value: float

    def __post_init__(self):
        _check_bits(self.bits)
        exact = Fraction(int(self.bits, 2), 2 ** len(self.bits))
        if Fraction(self.value) != exact:
            raise ArgumentError("value does not match bits")

    @property
    def k(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class NoiseModel:
    kind: str = "uniform"
    scale: float = 0.0

    def __post_init__(self):
        if self.kind not in ("uniform", "gaussian"):
            raise ArgumentError(f"unknown noise kind {self.kind!r}")
        if not math.isfinite(self.scale) or self.scale < 0:
            raise ArgumentError("noise scale must be finite and non-negative")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.kind == "uniform":
            return rng.uniform(-self.scale, self.scale, n)
        return rng.normal(0.0, self.scale, n)

    @property
    def std(self) -> float:
        return self.scale / math.sqrt(3) if self.kind == "uniform" else self.scale


def encode_fraction(bits: str) -> FractionSignal:
    _check_bits(bits)
    # int / 2**k is exact for k <= 52
    return FractionSignal(bits, int(bits, 2) / 2 ** len(bits))


def transmit_average(signal: FractionSignal, noise: NoiseModel, n: int, seed=0) -> float:
    """Mean of ``n`` received copies ``V + ε_i``."""
    if n < 1:
        raise ArgumentError("need at least one copy")
    if noise.scale == 0:
        return signal.value
    rng = stream(seed)
    return float(np.mean(signal.value + noise.sample(rng, n)))


def decode_fraction(w: float, k: int) -> str:
    """Round ``w`` to the nearest ``j/2^k`` in ``[0, 1 - 2^-k]`` and return its bits."""
    if not 1 <= k <= MAX_BITS:
        raise PrecisionError(f"k must lie in [1, {MAX_BITS}]")
    if not math.isfinite(w):
        raise ArgumentError("received value is not finite")
    j = math.floor(w * 2**k + 0.5)
    j = min(max(j, 0), 2**k - 1)
    return format(j, f"0{k}b")


def leading_correct_bits(sent: str, received: str) -> int:
    n = 0
    for a, b in zip(sent, received):
        if a != b:
            break
        n += 1
    return n


def copies_for_bits(k: int, noise: NoiseModel, sigmas: float = 5.0) -> int:
    """Copies putting the grid half-spacing ``2^-(k+1)`` at ``sigmas`` standard errors."""
    return math.ceil((sigmas * noise.std / 2.0 ** -(k + 1)) ** 2)


@dataclass(frozen=True)
class AveragingRow:
    n: int
    mean_abs_error: float
    bits_recovered: float
    noise_kind: str
    scale: float
    seed: int


def averaging_experiment(bits: str, noise: NoiseModel, ns: Sequence[int], trials: int, seed: int) -> list[AveragingRow]:
    """Mean ``|W̄ - V|`` and mean leading correct bits per copy count."""
    signal = encode_fraction(bits)
    rows = []
    for n in ns:
        errs, recovered = [], []
        for t in range(trials):
            w = transmit_average(signal, noise, int(n), stream(seed, n, t))
            errs.append(abs(w - signal.value))
            recovered.append(leading_correct_bits(bits, decode_fraction(w, signal.k)))
        rows.append(AveragingRow(int(n), float(np.mean(errs)), float(np.mean(recovered)), noise.kind, noise.scale, seed))
    return rows
