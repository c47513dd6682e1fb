"""M-level uniform quantizer and M-ary FSK over the quantized chaotic samples.

Level ``l`` is sent as M real samples ``c * cos(pi (2l + 1) m / (2M))``,
``m = 0..M-1``.  Each template is scaled numerically to unit energy and then by
``sqrt(symbol_energy)``, so every symbol carries exactly the same energy.  The
receiver is a coherent bank of M correlators followed by an argmax.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .chaos import ChaoticFrame
from .errors import InvalidArgumentError, OutOfRangeError

SUPPORTED_M = (2, 4, 8, 16, 32)


@dataclass(frozen=True)
class FskConfig:
    M: int
    symbol_energy: float = 1.0

    def __post_init__(self):
        if self.M not in SUPPORTED_M:
            raise InvalidArgumentError(f"M must be one of {SUPPORTED_M}, got {self.M}")
        if not self.symbol_energy > 0:
            raise InvalidArgumentError(f"symbol_energy must be positive, got {self.symbol_energy}")


@dataclass(frozen=True, eq=False)
class FskSymbol:
    samples: np.ndarray
    level: int


def _check_levels(level, M):
    level = np.asarray(level)
    if not np.issubdtype(level.dtype, np.integer):
        raise InvalidArgumentError(f"level must be an integer, got {level.dtype}")
    if np.any(level < 0) or np.any(level >= M):
        raise InvalidArgumentError(f"level must lie in [0, {M - 1}]")
    return level


def quantize(x, M: int):
    """Midrise uniform quantizer on (-1, 1): ``floor((x + 1) / 2 * M)``, top cell closed."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.abs(x) < 1.0):
        raise OutOfRangeError("quantizer input must satisfy |x| < 1")
    level = np.minimum(np.floor((x + 1.0) / 2.0 * M).astype(np.int64), M - 1)
    return int(level) if level.ndim == 0 else level


def dequantize(level, M: int):
    """Cell midpoint ``-1 + (2 level + 1) / M``."""
    level = _check_levels(level, M)
    value = -1.0 + (2.0 * level + 1.0) / M
    return float(value) if np.ndim(value) == 0 else value


@functools.lru_cache(maxsize=None)
def templates(M: int) -> np.ndarray:
    """Unit-energy FSK templates, one row per level, shape ``(M, M)``."""
    if M not in SUPPORTED_M:
        raise InvalidArgumentError(f"M must be one of {SUPPORTED_M}, got {M}")
    level = np.arange(M)[:, None]
    m = np.arange(M)[None, :]
    t = np.cos(np.pi * (2 * level + 1) * m / (2 * M))
    t /= np.linalg.norm(t, axis=1, keepdims=True)
    t.setflags(write=False)
    return t


def gram_matrix(M: int) -> np.ndarray:
    t = templates(M)
    return t @ t.T


def modulate_levels(levels, cfg: FskConfig) -> np.ndarray:
    """Vectorized modulator: levels of shape ``S`` map to samples of shape ``S + (M,)``."""
    levels = _check_levels(levels, cfg.M)
    return np.sqrt(cfg.symbol_energy) * templates(cfg.M)[levels]


def fsk_modulate(level: int, cfg: FskConfig) -> FskSymbol:
    return FskSymbol(samples=modulate_levels(level, cfg), level=int(level))


def demodulate_symbols(received, cfg: FskConfig):
    """Filter-bank decision on the last axis of ``received`` (length M).

    ``np.argmax`` returns the first maximum, so ties go to the lowest level.
    """
    received = np.asarray(received, dtype=float)
    if received.shape[-1:] != (cfg.M,):
        raise InvalidArgumentError(f"expected {cfg.M} samples per symbol, got shape {received.shape}")
    return np.argmax(received @ templates(cfg.M).T, axis=-1)


def fsk_demodulate(received, cfg: FskConfig) -> int:
    received = np.asarray(received, dtype=float)
    if received.ndim != 1:
        raise InvalidArgumentError("fsk_demodulate takes a single symbol")
    return int(demodulate_symbols(received, cfg))


def modulate_frame(frame: ChaoticFrame, cfg: FskConfig) -> list[FskSymbol]:
    levels = quantize(frame.normalized, cfg.M)
    samples = modulate_levels(levels, cfg)
    return [FskSymbol(samples=s, level=int(l)) for s, l in zip(samples, levels)]


def frame_waveform(symbols: list[FskSymbol]) -> np.ndarray:
    """Concatenate symbols into the transmitted sample stream (N*M samples)."""
    return np.concatenate([s.samples for s in symbols])


def demodulate_frame(received, cfg: FskConfig) -> np.ndarray:
    """Recover the dequantized chaotic samples from an N*M sample stream."""
    received = np.asarray(received, dtype=float)
    if received.ndim != 1 or received.size % cfg.M:
        raise InvalidArgumentError(f"stream length {received.size} is not a multiple of M={cfg.M}")
    levels = demodulate_symbols(received.reshape(-1, cfg.M), cfg)
    return dequantize(levels, cfg.M)
