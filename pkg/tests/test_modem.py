import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import brentq

from chaotic_modem import analysis, chaos, modem
from chaotic_modem.channel import NoiseConvention
from chaotic_modem.errors import InvalidArgumentError, OutOfRangeError
from chaotic_modem.modem import FskConfig

inside = st.floats(-1, 1, exclude_min=True, exclude_max=True)


def test_quantize_examples():
    assert modem.quantize(-1 + 1e-12, 4) == 0
    assert modem.quantize(0.999, 4) == 3
    assert modem.quantize(-0.1, 4) == 1


@pytest.mark.parametrize("x", [1.0, -1.0, 1.5, math.nan])
def test_quantize_out_of_range(x):
    with pytest.raises(OutOfRangeError):
        modem.quantize(x, 4)


@given(a=inside, b=inside, M=st.sampled_from(modem.SUPPORTED_M))
def test_quantize_monotone(a, b, M):
    lo, hi = sorted((a, b))
    assert modem.quantize(lo, M) <= modem.quantize(hi, M)


@given(x=inside, M=st.sampled_from(modem.SUPPORTED_M))
def test_quantization_error_within_half_cell(x, M):
    assert abs(modem.dequantize(modem.quantize(x, M), M) - x) <= 1 / M + 1e-15


def test_dequantize_examples():
    assert modem.dequantize(0, 2) == -0.5
    assert modem.dequantize(3, 4) == 0.75


@pytest.mark.parametrize("M", modem.SUPPORTED_M)
def test_dequantize_round_trip(M):
    levels = np.arange(M)
    np.testing.assert_array_equal(modem.quantize(modem.dequantize(levels, M), M), levels)


@pytest.mark.parametrize("level", [-1, 4, 2.5])
def test_dequantize_rejects_bad_level(level):
    with pytest.raises(InvalidArgumentError):
        modem.dequantize(level, 4)


def test_fsk_config_validation():
    with pytest.raises(InvalidArgumentError):
        FskConfig(3)
    with pytest.raises(InvalidArgumentError):
        FskConfig(4, symbol_energy=0.0)


@pytest.mark.parametrize("M", modem.SUPPORTED_M)
def test_symbols_have_constant_energy(M):
    cfg = FskConfig(M, symbol_energy=0.37)
    for level in range(M):
        s = modem.fsk_modulate(level, cfg)
        assert np.sum(s.samples**2) == pytest.approx(0.37, rel=1e-10)
        # first sample is cos(0) times the amplitude, identical for every level
        assert s.samples[0] == pytest.approx(modem.fsk_modulate(0, cfg).samples[0], rel=1e-12)


def test_fsk_m2_level0_shape():
    s = modem.fsk_modulate(0, FskConfig(2)).samples
    assert s[1] / s[0] == pytest.approx(math.cos(math.pi / 4))


@pytest.mark.parametrize("M", [4, 8, 16])
def test_gram_near_orthogonal(M):
    g = modem.gram_matrix(M)
    off = g - np.diag(np.diag(g))
    np.testing.assert_allclose(np.diag(g), 1.0, rtol=1e-12)
    assert np.max(np.abs(off)) < 0.25


@pytest.mark.parametrize("M", [2, 4, 8, 16])
def test_noiseless_round_trip(M):
    cfg = FskConfig(M)
    for level in range(M):
        assert modem.fsk_demodulate(modem.fsk_modulate(level, cfg).samples, cfg) == level


def test_demodulate_ties_to_lowest_level():
    assert modem.fsk_demodulate(np.zeros(8), FskConfig(8)) == 0


def test_demodulate_wrong_length():
    with pytest.raises(InvalidArgumentError):
        modem.fsk_demodulate(np.zeros(5), FskConfig(4))


def test_modulate_frame(maps):
    frame = chaos.generate_frame(maps, 1, 0.2, 128)
    cfg = FskConfig(4, symbol_energy=0.25)
    symbols = modem.modulate_frame(frame, cfg)
    wave = modem.frame_waveform(symbols)
    assert wave.size == 512
    assert np.sum(wave**2) == pytest.approx(128 * 0.25, rel=1e-10)
    x_tilde = modem.demodulate_frame(wave, cfg)
    assert np.all(np.abs(x_tilde - frame.normalized) <= 1 / 4)


def test_frame_energy_independent_of_content(maps):
    cfg = FskConfig(8, symbol_energy=0.125)
    energies = [
        np.sum(modem.frame_waveform(modem.modulate_frame(chaos.generate_frame(maps, b, x0, 64), cfg)) ** 2)
        for b, x0 in [(0, -0.9), (1, 0.1), (0, 0.55)]
    ]
    np.testing.assert_allclose(energies, 64 * 0.125, rtol=1e-10)


@pytest.mark.parametrize("convention", list(NoiseConvention))
@pytest.mark.parametrize("M", [4, 8, 16])
def test_symbol_error_rate_matches_closed_form(M, convention):
    es = 1.0 / M
    ebno = brentq(lambda e: analysis.fsk_pe(e, M, convention) - 1e-2, -10, 40)
    sigma2 = convention.variance_factor() / 10 ** (ebno / 10)
    rng = np.random.default_rng(M)
    n = 10**5
    levels = rng.integers(0, M, n)
    cfg = FskConfig(M, es)
    rx = modem.modulate_levels(levels, cfg) + math.sqrt(sigma2) * rng.standard_normal((n, M))
    ser = np.mean(modem.demodulate_symbols(rx, cfg) != levels)
    assert 1e-2 / 3 <= ser <= 3e-2
