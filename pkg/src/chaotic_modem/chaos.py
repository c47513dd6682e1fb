"""Chaotic maps, orbit generation and one-step prediction.

Two one-dimensional maps are used for chaotic switching::

    quadratic:      x -> a - x**2
    trigonometric:  x -> A * cos(x + phi)

Each map carries a fixed affine normalization ``x -> (x - mu) / s`` measured
once from a long orbit.  Frames are transmitted in the normalized domain, and
the receiver predicts with the conjugated map ``norm . f . denorm`` so that a
noiseless matched frame is reproduced exactly.

All map evaluations go through numpy ufuncs, for scalars as well as arrays, so
that single-frame and batched code paths produce bit-identical orbits.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DivergenceError, InvalidArgumentError

DIVERGENCE_LIMIT = 1e6
SCALE_HEADROOM = 1e-6
CLAMP = 1.0 - 1e-9

CALIBRATION_BURN_IN = 1_000
CALIBRATION_ORBIT_LEN = 1_000_000
CALIBRATION_X0 = 0.1

DEFAULT_A = 1.6
DEFAULT_AMPLITUDE = 2.2
DEFAULT_PHI = 47 * math.pi / 64


class MapKind(enum.Enum):
    QUADRATIC = "quadratic"
    TRIGONOMETRIC = "trigonometric"


@dataclass(frozen=True)
class MapParams:
    """One chaotic map plus its normalization transform.

    Only ``a`` matters for the quadratic map and only ``A``/``phi`` for the
    trigonometric one; the unused fields are ignored.
    """

    kind: MapKind
    a: float = DEFAULT_A
    A: float = DEFAULT_AMPLITUDE
    phi: float = DEFAULT_PHI
    norm_offset: float = 0.0
    norm_scale: float = 1.0

    def __post_init__(self):
        if not self.norm_scale > 0:
            raise InvalidArgumentError(f"norm_scale must be positive, got {self.norm_scale}")

    @property
    def name(self) -> str:
        if self.kind is MapKind.QUADRATIC:
            return f"quadratic(a={self.a:g})"
        return f"trigonometric(A={self.A:g}, phi={self.phi:.6g})"

    def dynamics(self) -> tuple:
        """The parameters that define the map itself, without normalization."""
        if self.kind is MapKind.QUADRATIC:
            return (self.kind, self.a)
        return (self.kind, self.A, self.phi)


def quadratic(a: float = DEFAULT_A) -> MapParams:
    return MapParams(MapKind.QUADRATIC, a=a)


def trigonometric(A: float = DEFAULT_AMPLITUDE, phi: float = DEFAULT_PHI) -> MapParams:
    return MapParams(MapKind.TRIGONOMETRIC, A=A, phi=phi)


@dataclass(frozen=True)
class MapPair:
    """Map used for bit 0 and map used for bit 1."""

    f0: MapParams
    f1: MapParams

    def __post_init__(self):
        if self.f0.dynamics() == self.f1.dynamics():
            raise InvalidArgumentError("f0 and f1 must be distinct maps")

    def __getitem__(self, bit: int) -> MapParams:
        if bit == 0:
            return self.f0
        if bit == 1:
            return self.f1
        raise InvalidArgumentError(f"bit must be 0 or 1, got {bit!r}")

    def swapped(self) -> MapPair:
        return MapPair(self.f1, self.f0)


@dataclass(frozen=True, eq=False)
class ChaoticFrame:
    """N samples of one map's orbit, raw and normalized."""

    raw: np.ndarray
    normalized: np.ndarray
    n_samples: int
    x0: float


def _check_finite(x):
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("input must be finite")


def _apply(m: MapParams, x):
    if m.kind is MapKind.QUADRATIC:
        return m.a - x * x
    return m.A * np.cos(x + m.phi)


def iterate(m: MapParams, x):
    """One step of the raw map; accepts scalars or arrays."""
    _check_finite(x)
    return _apply(m, x)


def normalize(m: MapParams, x):
    return (x - m.norm_offset) / m.norm_scale


def denormalize(m: MapParams, x):
    return m.norm_scale * x + m.norm_offset


def calibrate_normalization(
    m: MapParams,
    burn_in: int = CALIBRATION_BURN_IN,
    orbit_len: int = CALIBRATION_ORBIT_LEN,
    x0: float = CALIBRATION_X0,
) -> MapParams:
    """Fix the map's affine normalization from one long orbit.

    ``norm_offset`` is the orbit mean after ``burn_in`` steps and ``norm_scale``
    is ``(1 + 1e-6) * max|orbit - mean|``.
    """
    if orbit_len < 10_000:
        raise InvalidArgumentError(f"orbit_len must be at least 1e4, got {orbit_len}")
    if burn_in < 0:
        raise InvalidArgumentError(f"burn_in must be non-negative, got {burn_in}")
    _check_finite(x0)
    offset, scale = _calibrate(m.dynamics(), m, burn_in, orbit_len, float(x0))
    return replace(m, norm_offset=offset, norm_scale=scale)


@functools.lru_cache(maxsize=64)
def _calibrate(key, m, burn_in, orbit_len, x0):
    # scalar loop on purpose: one orbit, strictly sequential
    x = np.float64(x0)
    for step in range(burn_in):
        x = _apply(m, x)
        if abs(x) > DIVERGENCE_LIMIT or not np.isfinite(x):
            raise DivergenceError(m.name, step + 1, float(x))
    orbit = np.empty(orbit_len)
    for n in range(orbit_len):
        orbit[n] = x
        x = _apply(m, x)
        if abs(x) > DIVERGENCE_LIMIT or not np.isfinite(x):
            raise DivergenceError(m.name, burn_in + n + 1, float(x))
    mean = float(orbit.mean())
    spread = float(np.max(np.abs(orbit - mean)))
    if spread == 0.0:
        raise InvalidArgumentError(f"{m.name} has a constant orbit; cannot normalize")
    return mean, (1.0 + SCALE_HEADROOM) * spread


@functools.lru_cache(maxsize=16)
def default_map_pair(a: float = DEFAULT_A, A: float = DEFAULT_AMPLITUDE, phi: float = DEFAULT_PHI) -> MapPair:
    """Quadratic map for bit 0, trigonometric for bit 1, both calibrated."""
    return MapPair(
        calibrate_normalization(quadratic(a)),
        calibrate_normalization(trigonometric(A, phi)),
    )


def orbit(m: MapParams, x0, n_samples: int) -> np.ndarray:
    """Raw orbits of ``m`` started from each entry of ``x0``; shape ``x0.shape + (N,)``."""
    x = np.array(x0, dtype=float)
    _check_finite(x)
    out = np.empty(x.shape + (n_samples,))
    for n in range(n_samples):
        if np.any(np.abs(x) > DIVERGENCE_LIMIT) or not np.all(np.isfinite(x)):
            raise DivergenceError(m.name, n, float(np.max(np.abs(x))))
        out[..., n] = x
        x = _apply(m, x)
    return out


def normalized_orbit(m: MapParams, raw: np.ndarray) -> np.ndarray:
    """Normalize raw samples, clamping off-attractor transients inside (-1, 1)."""
    return np.clip(normalize(m, raw), -CLAMP, CLAMP)


def generate_frames(maps: MapPair, bits, x0, n_samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Batched frame generation: returns ``(raw, normalized)`` with shape ``(B, N)``."""
    bits = np.asarray(bits)
    x0 = np.asarray(x0, dtype=float)
    if bits.shape != x0.shape or bits.ndim != 1:
        raise InvalidArgumentError("bits and x0 must be 1-D arrays of equal length")
    raw = np.empty((bits.size, n_samples))
    normalized = np.empty_like(raw)
    for b in (0, 1):
        sel = bits == b
        if np.any(sel):
            raw[sel] = orbit(maps[b], x0[sel], n_samples)
            normalized[sel] = normalized_orbit(maps[b], raw[sel])
    return raw, normalized


def generate_frame(maps: MapPair, bit: int, x0: float, n_samples: int) -> ChaoticFrame:
    if n_samples < 2:
        raise InvalidArgumentError(f"N must be at least 2, got {n_samples}")
    if bit not in (0, 1):
        raise InvalidArgumentError(f"bit must be 0 or 1, got {bit!r}")
    _check_finite(x0)
    if abs(x0) > 1.0:
        raise InvalidArgumentError(f"x0 must lie in [-1, 1], got {x0}")
    raw, normalized = generate_frames(maps, np.array([bit]), np.array([x0]), n_samples)
    return ChaoticFrame(raw=raw[0], normalized=normalized[0], n_samples=n_samples, x0=float(x0))


def predict_next(m: MapParams, x_normalized):
    """Conjugated one-step prediction in the normalized domain."""
    _check_finite(x_normalized)
    return normalize(m, _apply(m, denormalize(m, x_normalized)))


def predict_next_bias_corrected(m: MapParams, x_raw, sigma2: float):
    """Mean of ``f(x + w)`` over ``w ~ N(0, sigma2)``, in the raw domain.

    Quadratic: ``a - x**2 - sigma2``.  Trigonometric: ``A cos(x + phi) exp(-sigma2 / 2)``.
    """
    if sigma2 < 0:
        raise InvalidArgumentError(f"sigma2 must be non-negative, got {sigma2}")
    _check_finite(x_raw)
    if m.kind is MapKind.QUADRATIC:
        return _apply(m, x_raw) - sigma2
    return _apply(m, x_raw) * np.exp(-sigma2 / 2)


def predict_next_debiased(m: MapParams, r_raw, sigma2: float):
    """Prediction from a noisy raw sample with the noise-induced bias removed.

    Inverts the law in :func:`predict_next_bias_corrected`: since
    ``E[f(x + w)]`` is ``f(x) - sigma2`` (quadratic) or ``f(x) exp(-sigma2/2)``
    (trigonometric), the unbiased estimate of ``f(x)`` from ``r = x + w`` is
    ``f(r) + sigma2`` or ``f(r) exp(sigma2/2)``.
    """
    if sigma2 < 0:
        raise InvalidArgumentError(f"sigma2 must be non-negative, got {sigma2}")
    _check_finite(r_raw)
    if m.kind is MapKind.QUADRATIC:
        return _apply(m, r_raw) + sigma2
    return _apply(m, r_raw) * np.exp(sigma2 / 2)
