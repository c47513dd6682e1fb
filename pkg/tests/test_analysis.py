import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chaotic_modem import analysis
from chaotic_modem.channel import NoiseConvention
from chaotic_modem.errors import InvalidArgumentError

# frozen from a 40-digit mpmath erfc evaluation
Q_REFERENCE = {
    -5.0: 0.99999971334842812081,
    -2.0: 0.9772498680518207928,
    -0.5: 0.69146246127401310364,
    0.5: 0.30853753872598689636,
    1.0: 0.15865525393145705141,
    2.0: 0.0227501319481792072,
    3.0: 0.0013498980316300945267,
    5.0: 2.8665157187919391167e-7,
    8.0: 6.2209605742717841235e-16,
    10.0: 7.619853024160526066e-24,
    20.0: 2.7536241186062336951e-89,
}


def test_q_known_values():
    assert analysis.q_function(0.0) == 0.5
    for x, q in Q_REFERENCE.items():
        assert analysis.q_function(x) == pytest.approx(q, rel=1e-12)


@given(st.floats(-30, 30))
def test_q_against_mpmath(x):
    mpmath.mp.dps = 30
    ref = float(mpmath.erfc(mpmath.mpf(x) / mpmath.sqrt(2)) / 2)
    assert analysis.q_function(x) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_q_reflection(x):
    assert analysis.q_function(-x) == pytest.approx(1 - analysis.q_function(x), abs=1e-15)


def test_q_strictly_decreasing():
    # below about -5 the values round to 1.0 in double precision
    q = analysis.q_function(np.linspace(-5, 30, 3501))
    assert np.all(np.diff(q) < 0)


def test_q_rejects_non_finite():
    with pytest.raises(InvalidArgumentError):
        analysis.q_function(math.nan)


def test_bpsk_bound():
    assert analysis.bpsk_bound(-math.inf) == 0.5
    assert analysis.bpsk_bound(-400.0) == pytest.approx(0.5)
    assert analysis.bpsk_bound(0.0) == pytest.approx(0.15865525393145705141, rel=1e-12)
    grid = np.arange(-10, 20, 0.5)
    assert np.all(np.diff(analysis.bpsk_bound(grid)) < 0)


def test_correlator_pe_special_cases():
    # antipodal replicas under the literal convention give Q(sqrt(Eb/N0))
    assert analysis.correlator_pe(4.0, NoiseConvention.LITERAL, rho=-1.0) == pytest.approx(analysis.bpsk_bound(4.0))
    # orthogonal replicas under the halved convention give the same expression
    assert analysis.correlator_pe(4.0, NoiseConvention.HALVED, rho=0.0) == pytest.approx(analysis.bpsk_bound(4.0))
    assert analysis.correlator_pe(0.0, NoiseConvention.LITERAL) == pytest.approx(
        float(mpmath.erfc(0.5) / 2), rel=1e-12)
    with pytest.raises(InvalidArgumentError):
        analysis.correlator_pe(0.0, rho=1.5)


def test_fsk_pe_reference_value():
    # (M-1) Q(sqrt(Eb/(M N0))) at M=4, 12 dB: 3 Q(1.9905...)
    assert analysis.fsk_pe(12.0, 4, NoiseConvention.HALVED) == pytest.approx(0.069797907899834918846, rel=1e-10)
    assert analysis.fsk_pe(12.0, 4, NoiseConvention.LITERAL) == pytest.approx(0.23890925432570537261, rel=1e-10)


def test_fsk_pe_clipped():
    assert analysis.fsk_pe(-5.0, 32) == 1.0


@pytest.mark.parametrize("convention", list(NoiseConvention))
def test_fsk_pe_monotone(convention):
    grid = np.arange(-5, 30, 0.25)
    for M in (2, 4, 8, 16, 32):
        assert np.all(np.diff(analysis.fsk_pe(grid, M, convention)) <= 0)
    for e in (0.0, 6.0, 12.0, 20.0):
        values = [analysis.fsk_pe(e, M, convention) for M in (2, 4, 8, 16, 32)]
        assert values == sorted(values)
    assert analysis.fsk_pe(8.0, 2, convention) < analysis.fsk_pe(8.0, 4, convention)


def test_fsk_pe_rejects_small_m():
    with pytest.raises(InvalidArgumentError):
        analysis.fsk_pe(0.0, 1)


def test_binomial_ci_examples():
    assert analysis.binomial_ci(0, 1000, 3)[0] == 0.0
    assert analysis.binomial_ci(1000, 1000, 3)[1] == 1.0
    assert analysis.binomial_ci(5, 5, 3)[1] == 1.0
    low, high = analysis.binomial_ci(50, 10**4, 3)
    assert (high - low) / 2 == pytest.approx(0.0021160103969498826638, rel=1e-12)


def test_binomial_ci_wilson_below_ten_errors():
    low, high = analysis.binomial_ci(0, 100, 3.0)
    assert low == 0.0
    assert high == pytest.approx(9 / 109, rel=1e-12)  # z^2 / (n + z^2)


@given(n=st.integers(1, 10**6), frac=st.floats(0, 1), z=st.floats(0, 5))
def test_binomial_ci_contains_estimate(n, frac, z):
    k = int(round(frac * n))
    low, high = analysis.binomial_ci(k, n, z)
    assert 0.0 <= low <= k / n <= high <= 1.0


@pytest.mark.parametrize("args", [(-1, 10, 3), (11, 10, 3), (0, 0, 3)])
def test_binomial_ci_invalid(args):
    with pytest.raises(InvalidArgumentError):
        analysis.binomial_ci(*args)


def test_theory_curves_non_increasing():
    curves = analysis.theory_curves(np.arange(0, 15, 2.0), (4, 8, 16), NoiseConvention.LITERAL)
    assert curves[0].label.startswith("bpsk bound")
    for c in curves:
        values = [v for _, v in c.points]
        assert all(0 <= v <= 1 for v in values)
        assert all(b <= a for a, b in zip(values, values[1:]))
    assert "N0" in curves[-1].note
