"""Quick property checks runnable from an installed package (no pytest needed)."""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from .. import analysis, chaos, detectors, modem
from ..channel import ChannelConfig, add_awgn, noise_sigma2
from .config import ExperimentConfig, Scheme
from .engine import run_experiment


def _conjugacy():
    maps = chaos.default_map_pair()
    worst = 0.0
    for bit in (0, 1):
        # start on the attractor so no sample is clamped
        x0 = float(chaos.orbit(maps[bit], np.array([0.3]), 50)[0, -1])
        frame = chaos.generate_frames(maps, np.array([bit]), np.array([x0]), 128)[1][0]
        pred = chaos.predict_next(maps[bit], frame[:-1])
        worst = max(worst, float(np.max(np.abs(pred - frame[1:]))))
    return worst < 1e-12, f"max |error| = {worst:.2e}"


def _fsk_round_trip():
    for M in (2, 4, 8, 16):
        cfg = modem.FskConfig(M)
        for level in range(M):
            if modem.fsk_demodulate(modem.fsk_modulate(level, cfg).samples, cfg) != level:
                return False, f"M={M} level={level}"
    return True, "all levels recovered"


def _quantizer_monotone():
    x = np.sort(np.random.default_rng(0).uniform(-0.999999, 0.999999, 10_000))
    ok = all(np.all(np.diff(modem.quantize(x, M)) >= 0) for M in modem.SUPPORTED_M)
    return ok, "non-decreasing levels"


def _q_reflection():
    x = np.linspace(-6, 6, 241)
    err = float(np.max(np.abs(analysis.q_function(x) + analysis.q_function(-x) - 1)))
    return err < 1e-12, f"max |Q(x)+Q(-x)-1| = {err:.1e}"


def _bias_law():
    rng = np.random.default_rng(1)
    m = chaos.quadratic()
    sigma2 = 0.01
    w = rng.normal(0.0, math.sqrt(sigma2), 200_000)
    vals = chaos.iterate(m, 0.5 + w)
    se = vals.std(ddof=1) / math.sqrt(vals.size)
    gap = abs(vals.mean() - chaos.predict_next_bias_corrected(m, 0.5, sigma2))
    return gap < 4 * se, f"|mean - law| = {gap:.2e} (se {se:.1e})"


def _awgn_reproducible():
    cfg = ChannelConfig(3.0, master_seed=11)
    a = add_awgn(np.zeros(1000), cfg, 5)
    b = add_awgn(np.zeros(1000), cfg, 5)
    var = float(np.var(add_awgn(np.zeros(200_000), cfg, 6)))
    ok = np.array_equal(a, b) and abs(var / noise_sigma2(cfg) - 1) < 0.02
    return ok, f"variance ratio {var / noise_sigma2(cfg):.4f}"


def _noiseless_exact():
    cfg = ExperimentConfig(
        schemes=(Scheme.SYNC_CSK, Scheme.PREDICTIVE_FSK, Scheme.PREDICTIVE_DIRECT),
        K=400, M_list=(4, 8, 16), ebno_grid_db=(math.inf,),
    )
    errors = sum(p.errors for c in run_experiment(cfg) for p in c.points)
    return errors == 0, f"{errors} errors over noiseless trials"


def _determinism():
    cfg = ExperimentConfig(K=300, ebno_grid_db=(0.0, 8.0), chunk_size=100)
    a = run_experiment(cfg)
    b = run_experiment(replace(cfg, chunk_size=70))
    return a == b, "chunking does not change counts"


def _decision_rules():
    maps = chaos.default_map_pair()
    tie_ok = int(detectors.decide(0.5, 0.5)) == 1
    reps = detectors.make_replicas(maps, 0.2, 64)
    csk_ok = detectors.csk_demod(reps.r0, reps) == 0 and detectors.csk_demod(reps.r1, reps) == 1
    return tie_ok and csk_ok, "ties -> 1, replica self-match"


CHECKS = [
    ("conjugated prediction reproduces noiseless frames", _conjugacy),
    ("FSK noiseless round trip", _fsk_round_trip),
    ("quantizer monotonicity", _quantizer_monotone),
    ("Q-function reflection identity", _q_reflection),
    ("quadratic bias law", _bias_law),
    ("AWGN reproducibility and variance", _awgn_reproducible),
    ("decision and correlator rules", _decision_rules),
    ("noiseless BER is zero", _noiseless_exact),
    ("scheduling independence", _determinism),
]


def run_selftest(echo=print) -> bool:
    all_ok = True
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # report and keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= bool(ok)
        echo(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok
