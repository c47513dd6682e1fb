"""Closed-form reference curves and binomial confidence intervals.

All SNR-dependent formulas take the noise convention explicitly.  In terms of
the per-sample noise variance ``sigma2`` (``N0`` or ``N0/2``), a binary
correlation decision between equal-energy waveforms of energy ``E`` and
correlation ``rho`` errs with probability ``Q(sqrt((1 - rho) E / (2 sigma2)))``.
Under the halved convention this gives the textbook forms; under the literal
convention every argument loses a factor of two.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .channel import NoiseConvention
from .errors import InvalidArgumentError

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class TheoryCurve:
    label: str
    points: tuple[tuple[float, float], ...]
    note: str = ""


def q_function(x):
    """Gaussian tail probability ``Q(x) = erfc(x / sqrt 2) / 2``."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("q_function needs finite input")
    q = 0.5 * special.erfc(x / _SQRT2)
    return float(q) if q.ndim == 0 else q


def _snr(ebno_db):
    ebno_db = np.asarray(ebno_db, dtype=float)
    return np.power(10.0, ebno_db / 10.0)


def _sigma2_per_eb(ebno_db, convention: NoiseConvention):
    """Noise variance for unit bit energy."""
    return convention.variance_factor() / _snr(ebno_db)


def _as_output(v):
    return float(v) if np.ndim(v) == 0 else v


def bpsk_bound(ebno_db):
    """``Q(sqrt(Eb/N0))``, the lower bound drawn for synchronized CSK."""
    return _as_output(q_function(np.sqrt(_snr(ebno_db))))


def correlator_pe(ebno_db, convention: NoiseConvention = NoiseConvention.LITERAL, rho=0.0):
    """Bit error probability of the two-replica correlator at unit frame energy.

    ``rho`` is the correlation between the two unit-energy waveforms:
    0 for orthogonal, -1 for antipodal.  May be an array (one entry per frame).
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < -1) or np.any(rho > 1):
        raise InvalidArgumentError("rho must lie in [-1, 1]")
    sigma2 = _sigma2_per_eb(ebno_db, convention)
    return _as_output(q_function(np.sqrt((1.0 - rho) / (2.0 * sigma2))))


def fsk_argument(ebno_db, M: int, convention: NoiseConvention = NoiseConvention.LITERAL):
    """``Es / (2 sigma2)`` with ``Es = Eb / M``: the squared Q-function argument."""
    return _snr(ebno_db) / (M * 2.0 * convention.variance_factor())


def fsk_pe(ebno_db, M: int, convention: NoiseConvention = NoiseConvention.LITERAL):
    """Union-bound symbol error ``min(1, (M-1) Q(sqrt(Eb / (M N0'))))``.

    ``N0'`` is ``N0`` under the halved convention and ``2 N0`` under the literal
    one, i.e. the argument is ``Es / (2 sigma2)`` for the active variance.
    """
    if M < 2:
        raise InvalidArgumentError(f"M must be at least 2, got {M}")
    pe = (M - 1) * q_function(np.sqrt(fsk_argument(ebno_db, M, convention)))
    return _as_output(np.minimum(1.0, pe))


def fsk_argument_note(convention: NoiseConvention) -> str:
    if convention is NoiseConvention.HALVED:
        return "(M-1) Q(sqrt(Eb/(M N0))), noise variance N0/2"
    return "(M-1) Q(sqrt(Eb/(2 M N0))), noise variance N0"


def binomial_ci(errors: int, trials: int, z: float = 3.0) -> tuple[float, float]:
    """Normal-approximation interval, Wilson score interval below 10 errors."""
    if trials < 1 or errors < 0 or errors > trials:
        raise InvalidArgumentError(f"invalid counts: errors={errors}, trials={trials}")
    if z < 0:
        raise InvalidArgumentError(f"z must be non-negative, got {z}")
    p = errors / trials
    if errors < 10:
        z2 = z * z
        denom = 1.0 + z2 / trials
        centre = (p + z2 / (2 * trials)) / denom
        half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    else:
        centre = p
        half = z * math.sqrt(p * (1 - p) / trials)
    low = max(0.0, centre - half)
    high = min(1.0, centre + half)
    # rounding must not push the interval off its own point estimate
    return min(low, p), max(high, p)


def theory_curves(ebno_grid_db, M_list=(), convention: NoiseConvention = NoiseConvention.LITERAL) -> list[TheoryCurve]:
    """Reference overlays: the BPSK bound, the orthogonal correlator, FSK symbol error per M."""
    grid = [float(e) for e in ebno_grid_db if math.isfinite(e)]
    curves = [
        TheoryCurve("bpsk bound Q(sqrt(Eb/N0))", tuple((e, bpsk_bound(e)) for e in grid)),
        TheoryCurve(
            f"sync-csk theory ({convention.value})",
            tuple((e, correlator_pe(e, convention)) for e in grid),
            note="orthogonal replicas, rho = 0",
        ),
    ]
    for M in M_list:
        curves.append(TheoryCurve(
            f"fsk symbol error M={M} ({convention.value})",
            tuple((e, fsk_pe(e, M, convention)) for e in grid),
            note=fsk_argument_note(convention),
        ))
    return curves
