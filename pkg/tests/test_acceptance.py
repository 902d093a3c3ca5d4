"""
Acceptance checks for the generator as a whole: maximal periods, the bias
law, comparator combinatorics, tap-interval correlation, stream quality,
the dynamic-threshold curve and the correlation oracle.

Run with: pytest tests/test_acceptance.py -v -m slow
"""

from __future__ import annotations

import itertools
import math

import numpy as np
import numpy.typing as npt
import pytest

from progrand.config import default_config
from progrand.engine import (
    ExhaustiveSweepSource,
    GeneratorConfig,
    compare,
    empirical_p1,
    run,
    sample_values,
    theoretical_p1,
)
from progrand.lfsr import DEFAULT_POLYNOMIAL_32, KNOWN_PRIMITIVE, is_primitive, lfsr_sequence, new_lfsr, period
from progrand.stats import (
    correlation_report,
    correlation_values,
    cross_correlation,
    cyclic_correlation,
    fit_derivative,
    quadratic_fit,
    ramp_phase_fit,
)
from progrand.taps import TapSet, generate_stream_configs, is_shift_equivalent, sample_values_from_history
from progrand.threshold import CounterRamp, Fixed

pytestmark = pytest.mark.slow

BIAS_TOLERANCE = 0.0015
QUALITY_LIMIT = 0.02
CYCLIC_TOLERANCE = 1e-9


def single_bit_stream(tap_set: TapSet, degree: int = 10) -> npt.NDArray[np.int64]:
    """One full period of the bit XORed from `tap_set`."""
    steps = (1 << degree) - 1
    history = lfsr_sequence(new_lfsr(KNOWN_PRIMITIVE[degree]), steps)
    return sample_values_from_history(history, degree, [tap_set], steps)


class TestMaximalPeriod:
    """Primitive polynomials give period 2^n - 1."""

    @pytest.mark.parametrize("degree", [3, 7, 11, 16])
    def test_period(self, degree: int) -> None:
        """Brute-force period equals 2^n - 1."""
        poly = KNOWN_PRIMITIVE[degree]
        assert is_primitive(poly)
        assert period(poly) == (1 << degree) - 1


class TestBiasLaw:
    """Empirical P(1) against ((2^m - 1) - B) / 2^m."""

    def test_default_config(self) -> None:
        """One million samples per stream and threshold land within 0.0015."""
        config = default_config()
        assert config.polynomial == DEFAULT_POLYNOMIAL_32
        values = sample_values(config, 1_000_000)
        for threshold in (0, 27, 64, 127, 191, 227, 255):
            bits = compare(values, threshold)
            p1 = empirical_p1(bits)
            assert abs(p1 - float(theoretical_p1(threshold, 8))) <= BIAS_TOLERANCE, threshold
            if threshold == 255:
                assert p1 == 0.0


class TestComparatorCombinatorics:
    """Exact counts under an exhaustive sweep of A."""

    def test_every_threshold(self) -> None:
        """Ones over one sweep of 256 values = 255 - B for every B."""
        base = default_config()
        for threshold in range(256):
            config = GeneratorConfig(base.polynomial, base.seed, base.m, base.streams, Fixed(threshold))
            output = run(config, 256, source=ExhaustiveSweepSource(8, len(base.streams)))
            assert output.bits.sum(axis=1).tolist() == [255 - threshold] * len(base.streams)


class TestTapIntervalCorrelation:
    """Shift-equivalent taps give time-shifted copies; others stay two-valued."""

    def test_shift_equivalent_pair(self) -> None:
        """{1,4} and {5,8} read the same bit four steps apart."""
        a = single_bit_stream(TapSet((1, 4)))
        b = single_bit_stream(TapSet((5, 8)))
        assert cyclic_correlation(a, b, 4) == pytest.approx(1.0, abs=CYCLIC_TOLERANCE)
        assert cross_correlation(a, b, 4) == pytest.approx(1.0, abs=0.01)

    @pytest.mark.parametrize(
        "first,second",
        [((1, 4), (1, 5)), ((2, 3), (1, 7)), ((1, 10), (3, 5)), ((4, 6), (1, 9))],
    )
    def test_non_equivalent_pair(self, first: tuple[int, ...], second: tuple[int, ...]) -> None:
        """Cyclic correlation is 1 at one lag and -1/(2^10 - 1) at all others."""
        assert not is_shift_equivalent(TapSet(first), TapSet(second))
        a = single_bit_stream(TapSet(first))
        b = single_bit_stream(TapSet(second))
        values = np.array([cyclic_correlation(a, b, f) for f in range(1023)])
        peaks = np.flatnonzero(np.abs(values - 1.0) <= CYCLIC_TOLERANCE)
        assert peaks.size == 1
        rest = np.delete(values, peaks)
        np.testing.assert_allclose(rest, -1 / 1023, atol=CYCLIC_TOLERANCE)


class TestStreamQuality:
    """Generated streams stay uncorrelated across pairs and lags."""

    @pytest.mark.parametrize("threshold", [27, 127, 227])
    def test_max_correlation(self, threshold: int) -> None:
        """Every cross and non-zero-lag auto max |R| stays below 0.02."""
        base = default_config()
        streams = tuple(generate_stream_configs(32, 3, 8, 4))
        config = GeneratorConfig(base.polynomial, base.seed, 8, streams, Fixed(threshold))
        bits = run(config, 100_000).bits
        for i, j in itertools.combinations(range(4), 2):
            report = correlation_report(bits[i], bits[j], 1000, False, "fft")
            assert abs(report.max_abs_value) < QUALITY_LIMIT, (i, j, report.max_abs_lag)
        for i in range(4):
            report = correlation_report(bits[i], bits[i], 1000, True, "fft")
            assert abs(report.max_abs_value) < QUALITY_LIMIT, (i, report.max_abs_lag)


class TestDynamicCurve:
    """Counter-ramp cumulative count."""

    def test_ramp_fit_average(self) -> None:
        """Averaged over 100 seeds the fit approaches -t^2 + 2t."""
        base = default_config()
        c2: list[float] = []
        c1: list[float] = []
        curves: list[npt.NDArray[np.float64]] = []
        for seed in range(1, 101):
            config = GeneratorConfig(base.polynomial, seed, base.m, base.streams, CounterRamp(0))
            output = run(config, 2048)
            result = ramp_phase_fit(output.stream(0), output.thresholds, 8)
            assert np.all(np.diff(result.curve.values) >= 0)
            assert result.saturation_step == 255
            assert int(output.bits[:, 255:].sum()) == 0
            assert result.fit.c2 < 0 < result.fit.c1
            assert result.fit.r_squared > 0.97
            c2.append(result.fit.c2)
            c1.append(result.fit.c1)
            curves.append(result.curve.values[:256])
        assert float(np.mean(c2)) == pytest.approx(-1.0, abs=0.05)
        assert float(np.mean(c1)) == pytest.approx(2.0, abs=0.05)

        # one seed carries binomial noise; the seed-averaged curve is the quadratic
        mean_fit = quadratic_fit(np.linspace(0.0, 1.0, 256), np.mean(curves, axis=0))
        assert mean_fit.r_squared > 0.999
        assert mean_fit.c2 < 0 < mean_fit.c1


class TestFitMachinery:
    """Noiseless recovery and the derivative."""

    def test_recovery(self) -> None:
        """Coefficients back to 1e-9; derivative (-3.0792, 2.4658)."""
        t = np.linspace(0.0, 1.0, 257)
        fit = quadratic_fit(t, -1.5396 * t**2 + 2.4658 * t + 0.0055)
        for got, want in zip((fit.c2, fit.c1, fit.c0), (-1.5396, 2.4658, 0.0055)):
            assert abs(got - want) <= 1e-9
        slope, intercept = fit_derivative(fit)
        assert slope == pytest.approx(-3.0792, abs=1e-9)
        assert intercept == pytest.approx(2.4658, abs=1e-9)


class TestOracleEquivalence:
    """Vectorized correlation against a literal double loop."""

    def test_random_sequences(self) -> None:
        """200 random sequences of length <= 500 at every valid lag, to 1e-12."""
        rng = np.random.default_rng(2024)
        for _ in range(200):
            n = int(rng.integers(3, 501))
            x = rng.integers(0, 2, n).astype(float)
            y = rng.integers(0, 2, n).astype(float)
            x[0], x[1] = 0.0, 1.0
            y[0], y[1] = 1.0, 0.0
            lags = list(range(-(n - 2), n - 1))
            cross = correlation_values(x, y, lags)
            auto = correlation_values(x, x, lags, auto=True)

            xl = x.tolist()
            yl = y.tolist()
            mx = sum(xl) / n
            my = sum(yl) / n
            sx = sum((v - mx) ** 2 for v in xl)
            sy = sum((v - my) ** 2 for v in yl)
            for k, f in enumerate(lags):
                num_xy = 0.0
                num_xx = 0.0
                for i in range(max(0, -f), min(n, n - f)):
                    num_xy += (xl[i] - mx) * (yl[i + f] - my)
                    num_xx += (xl[i] - mx) * (xl[i + f] - mx)
                assert abs(cross[k] - num_xy / (math.sqrt(sx) * math.sqrt(sy))) <= 1e-12
                assert abs(auto[k] - num_xx / sx) <= 1e-12
