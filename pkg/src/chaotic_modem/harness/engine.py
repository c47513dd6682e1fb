"""Monte Carlo BER engine.

Trial ``k`` transmits bit ``k mod 2`` from an initial condition drawn on
stream ``k``, and its channel noise also comes from stream ``k``.  The noise of
a trial is a single standard-normal sequence; every scheme takes the prefix it
needs and every grid point rescales it.  Trials are processed in fixed chunks
whose error counts are summed, so the result does not depend on how chunks are
scheduled across workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .. import chaos, detectors, modem
from ..analysis import binomial_ci
from ..channel import ChannelConfig, initial_conditions, noise_sigma2, unit_noise
from ..chaos import MapPair
from ..errors import ConfigError, InvalidArgumentError
from .config import ExperimentConfig, Scheme

CI_Z = 3.0


@dataclass(frozen=True)
class BerPoint:
    ebno_db: float
    trials: int
    errors: int
    ber: float
    ci_low: float
    ci_high: float


def ber_point(ebno_db: float, trials: int, errors: int, z: float = CI_Z) -> BerPoint:
    low, high = binomial_ci(errors, trials, z)
    return BerPoint(float(ebno_db), int(trials), int(errors), errors / trials, low, high)


@dataclass(frozen=True)
class BerCurve:
    scheme: str
    M: int | None
    N: int
    points: tuple[BerPoint, ...]

    @property
    def label(self) -> str:
        return self.scheme if self.M is None else f"{self.scheme} M={self.M}"

    def ber(self) -> np.ndarray:
        return np.array([p.ber for p in self.points])

    def at(self, ebno_db: float) -> BerPoint:
        for p in self.points:
            if p.ebno_db == ebno_db:
                return p
        raise KeyError(ebno_db)


def map_pair_for(config: ExperimentConfig) -> MapPair:
    return chaos.default_map_pair(config.a, config.A, config.phi)


def noise_variances(config: ExperimentConfig) -> np.ndarray:
    return np.array([
        noise_sigma2(ChannelConfig(e, noise_convention=config.noise_convention, master_seed=config.master_seed))
        for e in config.ebno_grid_db
    ])


def _noise_length(config: ExperimentConfig, keys) -> int:
    per_sample = max((m or 1) for _, m in keys)
    return config.N * per_sample


def trial_errors(config: ExperimentConfig, maps: MapPair, trials, bits, keys=None) -> dict:
    """Error indicators for a batch of trials.

    Returns ``{(scheme, M): bool array (n_grid, B)}`` for every requested curve.
    """
    keys = list(config.curve_keys() if keys is None else keys)
    trials = np.asarray(trials, dtype=np.int64)
    bits = np.asarray(bits, dtype=np.int64)
    N = config.N
    sigma2 = noise_variances(config)
    sigma = np.sqrt(sigma2)

    x0 = initial_conditions(config.master_seed, trials)
    noise = unit_noise(config.master_seed, trials, _noise_length(config, keys))
    raw0 = chaos.orbit(maps.f0, x0, N)
    raw1 = chaos.orbit(maps.f1, x0, N)
    is0 = (bits == 0)[:, None]
    tx_raw = np.where(is0, raw0, raw1)
    norm0 = chaos.normalized_orbit(maps.f0, raw0)
    norm1 = chaos.normalized_orbit(maps.f1, raw1)
    tx_norm = np.where(is0, norm0, norm1)

    out = {}
    schemes = {s for s, _ in keys}
    if Scheme.SYNC_CSK in schemes or Scheme.UNSYNC_CSK in schemes:
        y = detectors.unit_energy(tx_norm)  # Eb = 1 per frame
        w = noise[:, :N]
        if Scheme.SYNC_CSK in schemes:
            out[(Scheme.SYNC_CSK, None)] = _csk_errors(y, w, sigma, norm0, norm1, bits)
        if Scheme.UNSYNC_CSK in schemes:
            start = x0 + config.epsilon
            rep0 = chaos.normalized_orbit(maps.f0, chaos.orbit(maps.f0, start, N))
            rep1 = chaos.normalized_orbit(maps.f1, chaos.orbit(maps.f1, start, N))
            out[(Scheme.UNSYNC_CSK, None)] = _csk_errors(y, w, sigma, rep0, rep1, bits)

    for scheme, M in keys:
        if scheme is Scheme.PREDICTIVE_FSK:
            out[(scheme, M)] = _fsk_errors(tx_norm, noise, sigma, maps, bits, M)
        elif scheme in (Scheme.PREDICTIVE_DIRECT, Scheme.PREDICTIVE_DIRECT_BIAS):
            out[(scheme, M)] = _direct_errors(
                tx_raw, noise[:, :N], sigma2, maps, bits, scheme is Scheme.PREDICTIVE_DIRECT_BIAS)
    return {k: out[k] for k in keys}


def _csk_errors(y, w, sigma, rep0, rep1, bits):
    errs = np.empty((sigma.size, bits.size), dtype=bool)
    for g, s in enumerate(sigma):
        c0, c1 = detectors.csk_statistics(y + s * w, rep0, rep1)
        errs[g] = detectors.decide(-c0, -c1) != bits
    return errs


def _fsk_errors(tx_norm, noise, sigma, maps, bits, M):
    B, N = tx_norm.shape
    cfg = modem.FskConfig(M, symbol_energy=1.0 / M)
    symbols = modem.modulate_levels(modem.quantize(tx_norm, M), cfg)  # (B, N, M)
    w = noise[:, :N * M].reshape(B, N, M)
    errs = np.empty((sigma.size, B), dtype=bool)
    for g, s in enumerate(sigma):
        levels = modem.demodulate_symbols(symbols + s * w, cfg)
        x_tilde = modem.dequantize(levels, M)
        d0, d1 = detectors.predictive_distances(x_tilde, maps)
        errs[g] = detectors.decide(d0, d1) != bits
    return errs


def _direct_errors(tx_raw, w, sigma2, maps, bits, bias_correct):
    errs = np.empty((sigma2.size, bits.size), dtype=bool)
    for g, s2 in enumerate(sigma2):
        r = tx_raw + math.sqrt(s2) * w
        d0, d1 = detectors.predictive_direct_distances(r, maps, s2, bias_correct)
        errs[g] = detectors.decide(d0, d1) != bits
    return errs


def run_bit_trial(scheme, bit: int, trial_index: int, config: ExperimentConfig,
                  ebno_db: float, M: int | None = None) -> int:
    """Error indicator of one bit sent through the full chain of ``scheme``."""
    scheme = Scheme(scheme)
    if bit not in (0, 1):
        raise InvalidArgumentError(f"bit must be 0 or 1, got {bit!r}")
    if scheme.uses_fsk and M is None:
        raise InvalidArgumentError("predictive-fsk needs M")
    key = (scheme, M if scheme.uses_fsk else None)
    single = _single_point_config(config, ebno_db, M)
    errs = trial_errors(single, map_pair_for(single), [trial_index], [bit], keys=[key])
    return int(errs[key][0, 0])


def _single_point_config(config, ebno_db, M):
    m_list = (M,) if M is not None else config.M_list
    return replace(config, ebno_grid_db=(float(ebno_db),), M_list=m_list)


def _chunk_counts(args):
    config, maps, start, stop = args
    trials = np.arange(start, stop, dtype=np.int64)
    errs = trial_errors(config, maps, trials, trials % 2)
    return {k: v.sum(axis=1) for k, v in errs.items()}


def chunk_bounds(config: ExperimentConfig):
    return [(s, min(s + config.chunk_size, config.K)) for s in range(0, config.K, config.chunk_size)]


def run_experiment(config: ExperimentConfig, workers: int = 1, progress=None) -> list[BerCurve]:
    """BER for every (scheme, M, Eb/N0) cell over trials ``0..K-1``."""
    if not isinstance(config, ExperimentConfig):
        raise ConfigError("run_experiment needs an ExperimentConfig")
    if workers < 1:
        raise ConfigError(f"workers must be positive, got {workers}")
    maps = map_pair_for(config)
    keys = config.curve_keys()
    totals = {k: np.zeros(len(config.ebno_grid_db), dtype=np.int64) for k in keys}
    tasks = [(config, maps, s, e) for s, e in chunk_bounds(config)]

    def accumulate(counts):
        for k, v in counts.items():
            totals[k] += v
        if progress is not None:
            progress()

    if workers == 1 or len(tasks) == 1:
        for t in tasks:
            accumulate(_chunk_counts(t))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for counts in pool.map(_chunk_counts, tasks):
                accumulate(counts)

    return [
        BerCurve(
            scheme=s.value, M=m, N=config.N,
            points=tuple(ber_point(e, config.K, int(n)) for e, n in zip(config.ebno_grid_db, totals[(s, m)])),
        )
        for s, m in keys
    ]


def replica_correlations(config: ExperimentConfig, trials=None) -> np.ndarray:
    """Correlation between the unit-energy f0 and f1 frames of each trial."""
    maps = map_pair_for(config)
    trials = np.arange(config.K) if trials is None else np.asarray(trials)
    x0 = initial_conditions(config.master_seed, trials)
    n0 = detectors.unit_energy(chaos.normalized_orbit(maps.f0, chaos.orbit(maps.f0, x0, config.N)))
    n1 = detectors.unit_energy(chaos.normalized_orbit(maps.f1, chaos.orbit(maps.f1, x0, config.N)))
    return np.sum(n0 * n1, axis=-1)
