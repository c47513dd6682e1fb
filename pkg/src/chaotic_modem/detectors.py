"""Receivers: predictive (over FSK or direct) and CSK correlators.

The batched functions (``*_distances``, ``csk_statistics``, ``decide``) operate
on the last axis and broadcast over leading ones; the ``*_demod`` wrappers take
a single frame.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chaos
from .chaos import MapPair
from .errors import InvalidArgumentError


@dataclass(frozen=True)
class Distances:
    d0: float
    d1: float


@dataclass(frozen=True, eq=False)
class CskReplicas:
    r0: np.ndarray
    r1: np.ndarray
    epsilon: float


def decide(d0, d1):
    """Bit 0 when ``d0 < d1``, else bit 1 (ties go to 1)."""
    return np.where(np.asarray(d0) < np.asarray(d1), 0, 1)


def _frame_array(x, name):
    x = np.asarray(x, dtype=float)
    if x.ndim < 1 or x.shape[-1] < 2:
        raise InvalidArgumentError(f"{name} needs at least 2 samples per frame")
    return x


def _mse(received, predicted):
    return np.mean((received[..., 1:] - predicted) ** 2, axis=-1)


def predictive_distances(x_tilde, maps: MapPair):
    """MSE between each sample and its one-step prediction under f0 and f1."""
    x = _frame_array(x_tilde, "x_tilde")
    d0 = _mse(x, chaos.predict_next(maps.f0, x[..., :-1]))
    d1 = _mse(x, chaos.predict_next(maps.f1, x[..., :-1]))
    return d0, d1


def predictive_demod(x_tilde, maps: MapPair) -> tuple[int, Distances]:
    x = _frame_array(x_tilde, "x_tilde")
    if x.ndim != 1:
        raise InvalidArgumentError("predictive_demod takes a single frame")
    d0, d1 = predictive_distances(x, maps)
    return int(decide(d0, d1)), Distances(float(d0), float(d1))


def predictive_direct_distances(r, maps: MapPair, sigma2: float, bias_correct: bool = False):
    """Raw-domain distances for an unmodulated (direct) chaotic transmission.

    With ``bias_correct`` the predictions remove the mean shift that the noisy
    input induces through each nonlinear map.
    """
    r = _frame_array(r, "r")
    if sigma2 < 0:
        raise InvalidArgumentError(f"sigma2 must be non-negative, got {sigma2}")
    past = r[..., :-1]
    if bias_correct:
        p0 = chaos.predict_next_debiased(maps.f0, past, sigma2)
        p1 = chaos.predict_next_debiased(maps.f1, past, sigma2)
    else:
        p0 = chaos.iterate(maps.f0, past)
        p1 = chaos.iterate(maps.f1, past)
    return _mse(r, p0), _mse(r, p1)


def predictive_direct_demod(r, maps: MapPair, sigma2: float, bias_correct: bool = False) -> tuple[int, Distances]:
    r = _frame_array(r, "r")
    if r.ndim != 1:
        raise InvalidArgumentError("predictive_direct_demod takes a single frame")
    d0, d1 = predictive_direct_distances(r, maps, sigma2, bias_correct)
    return int(decide(d0, d1)), Distances(float(d0), float(d1))


def make_replicas(maps: MapPair, x0: float, n_samples: int, epsilon: float = 0.0) -> CskReplicas:
    """Normalized orbits of both maps from ``x0 + epsilon``."""
    if n_samples < 2:
        raise InvalidArgumentError(f"N must be at least 2, got {n_samples}")
    start = np.array([x0 + epsilon])
    r0 = chaos.normalized_orbit(maps.f0, chaos.orbit(maps.f0, start, n_samples))[0]
    r1 = chaos.normalized_orbit(maps.f1, chaos.orbit(maps.f1, start, n_samples))[0]
    return CskReplicas(r0=r0, r1=r1, epsilon=float(epsilon))


def unit_energy(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    norm = np.linalg.norm(x, axis=-1, keepdims=True)
    if np.any(norm == 0):
        raise InvalidArgumentError("cannot scale an all-zero waveform to unit energy")
    return x / norm


def csk_statistics(r, replica0, replica1):
    """Correlations against equal-energy replicas: ``(c0, c1)``."""
    r = np.asarray(r, dtype=float)
    if r.shape[-1] != np.shape(replica0)[-1] or r.shape[-1] != np.shape(replica1)[-1]:
        raise InvalidArgumentError("received frame and replicas differ in length")
    c0 = np.sum(r * unit_energy(replica0), axis=-1)
    c1 = np.sum(r * unit_energy(replica1), axis=-1)
    return c0, c1


def csk_demod(r, replicas: CskReplicas) -> int:
    """Argmax correlator; equal correlations decide bit 1."""
    c0, c1 = csk_statistics(r, replicas.r0, replicas.r1)
    # larger correlation is the smaller "distance"
    return int(decide(-c0, -c1))
