"""AWGN channel with explicit Eb/N0 bookkeeping and stream-addressed noise.

Randomness is addressed by ``(master_seed, stream_id, lane)`` through a
Philox counter-based generator: the key holds seed and stream, the top counter
word holds the lane.  Whoever asks for a given address gets the same numbers,
independent of thread count or call order.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

_MASK64 = (1 << 64) - 1


class NoiseConvention(enum.Enum):
    """Per-sample noise variance: ``N0`` (as printed) or ``N0 / 2`` (textbook)."""

    LITERAL = "literal"
    HALVED = "halved"

    def variance_factor(self) -> float:
        return 1.0 if self is NoiseConvention.LITERAL else 0.5


class Lane(enum.IntEnum):
    """Independent sub-streams of one trial's randomness."""

    NOISE = 0
    INITIAL_CONDITION = 1


@dataclass(frozen=True)
class ChannelConfig:
    ebno_db: float
    eb: float = 1.0
    noise_convention: NoiseConvention = NoiseConvention.LITERAL
    master_seed: int = 0

    def __post_init__(self):
        if not self.eb > 0:
            raise InvalidArgumentError(f"eb must be positive, got {self.eb}")
        if math.isnan(self.ebno_db) or self.ebno_db == -math.inf:
            raise InvalidArgumentError(f"invalid Eb/N0: {self.ebno_db}")

    @property
    def n0(self) -> float:
        """Noise spectral density; zero when ``ebno_db`` is +inf (noise disabled)."""
        if self.ebno_db == math.inf:
            return 0.0
        return self.eb / 10 ** (self.ebno_db / 10)


def noise_sigma2(cfg: ChannelConfig) -> float:
    return cfg.n0 * cfg.noise_convention.variance_factor()


def stream_generator(master_seed: int, stream_id: int, lane: Lane = Lane.NOISE) -> np.random.Generator:
    key = ((int(master_seed) & _MASK64) << 64) | (int(stream_id) & _MASK64)
    counter = int(lane) << 192
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def unit_noise(master_seed: int, stream_ids, n: int) -> np.ndarray:
    """Standard normal draws, one row of length ``n`` per stream.

    Row ``i`` equals the first ``n`` noise samples that :func:`add_awgn` would
    use for ``stream_ids[i]`` (before scaling).
    """
    stream_ids = np.asarray(stream_ids)
    out = np.empty((stream_ids.size, n))
    for i, sid in enumerate(stream_ids.tolist()):
        out[i] = stream_generator(master_seed, sid, Lane.NOISE).standard_normal(n)
    return out


def initial_conditions(master_seed: int, stream_ids) -> np.ndarray:
    """One uniform draw in [-1, 1) per stream from its initial-condition lane."""
    stream_ids = np.asarray(stream_ids)
    return np.array(
        [stream_generator(master_seed, sid, Lane.INITIAL_CONDITION).uniform(-1.0, 1.0)
         for sid in stream_ids.tolist()],
        dtype=float,
    )


def add_awgn(signal, cfg: ChannelConfig, stream_id: int) -> np.ndarray:
    signal = np.asarray(signal, dtype=float)
    if signal.ndim != 1 or signal.size == 0:
        raise InvalidArgumentError("signal must be a non-empty 1-D sequence")
    sigma2 = noise_sigma2(cfg)
    if sigma2 == 0.0:
        return signal.copy()
    w = stream_generator(cfg.master_seed, stream_id, Lane.NOISE).standard_normal(signal.size)
    return signal + math.sqrt(sigma2) * w
