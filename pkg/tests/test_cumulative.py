"""
Tests for the cumulative-count curve and the quadratic ramp-phase fit.
"""

from __future__ import annotations

import numpy as np
import pytest

from progrand.config import default_config
from progrand.engine import GeneratorConfig, run
from progrand.errors import DegenerateDesign, NoOnes
from progrand.stats import QuadraticFit, cumulative_count_curve, fit_derivative, quadratic_fit, ramp_phase_fit
from progrand.threshold import CounterRamp, Fixed


def ramp_config(seed: int = 1) -> GeneratorConfig:
    base = default_config()
    return GeneratorConfig(base.polynomial, seed, base.m, base.streams, CounterRamp(0))


class TestCurve:
    """Running count normalized by the total."""

    def test_all_ones(self) -> None:
        """[1,1,1,1] -> quarters."""
        curve = cumulative_count_curve([1, 1, 1, 1])
        np.testing.assert_allclose(curve.values, [0.25, 0.5, 0.75, 1.0])
        np.testing.assert_allclose(curve.t, [0.0, 1 / 3, 2 / 3, 1.0])

    def test_late_ones(self) -> None:
        """[0,0,1,1] -> [0, 0, 0.5, 1]."""
        np.testing.assert_allclose(cumulative_count_curve([0, 0, 1, 1]).values, [0.0, 0.0, 0.5, 1.0])

    def test_no_ones(self) -> None:
        """An all-zero sequence cannot be normalized."""
        with pytest.raises(NoOnes):
            cumulative_count_curve([0, 0, 0])

    def test_frame(self) -> None:
        """CSV columns."""
        assert list(cumulative_count_curve([0, 1]).to_frame().columns) == ["t", "cumulative_count"]


class TestQuadraticFit:
    """Least squares against [t^2, t, 1]."""

    def test_recovers_coefficients(self) -> None:
        """Noiseless samples of -1.5396 t^2 + 2.4658 t + 0.0055."""
        t = np.linspace(0.0, 1.0, 101)
        v = -1.5396 * t**2 + 2.4658 * t + 0.0055
        fit = quadratic_fit(t, v)
        assert fit.c2 == pytest.approx(-1.5396, abs=1e-9)
        assert fit.c1 == pytest.approx(2.4658, abs=1e-9)
        assert fit.c0 == pytest.approx(0.0055, abs=1e-9)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_constant(self) -> None:
        """Constant v fits c0 only."""
        fit = quadratic_fit([0.0, 0.5, 1.0, 1.5], [5.0, 5.0, 5.0, 5.0])
        assert fit.c2 == pytest.approx(0.0, abs=1e-9)
        assert fit.c1 == pytest.approx(0.0, abs=1e-9)
        assert fit.c0 == pytest.approx(5.0, abs=1e-9)
        assert fit.r_squared == 1.0

    @pytest.mark.parametrize("t", [[0.0, 0.0, 1.0, 1.0], [0.0, 1.0]])
    def test_degenerate(self, t: list[float]) -> None:
        """Fewer than three distinct t values."""
        with pytest.raises(DegenerateDesign):
            quadratic_fit(t, [1.0] * len(t))

    def test_length_mismatch(self) -> None:
        """t and v must align."""
        with pytest.raises(DegenerateDesign):
            quadratic_fit([0.0, 0.5, 1.0], [1.0, 2.0])

    def test_callable(self) -> None:
        """The fit evaluates as a polynomial."""
        fit = QuadraticFit(c2=-1.0, c1=2.0, c0=0.5, r_squared=1.0)
        np.testing.assert_allclose(fit([0.0, 1.0]), [0.5, 1.5])


class TestDerivative:
    """d/dt = 2 c2 t + c1."""

    def test_published(self) -> None:
        """(-1.5396, 2.4658, 0.0055) -> (-3.0792, 2.4658)."""
        assert fit_derivative(QuadraticFit(-1.5396, 2.4658, 0.0055, 1.0)) == (-3.0792, 2.4658)

    def test_constant(self) -> None:
        """A constant fit has a zero derivative."""
        assert fit_derivative(QuadraticFit(0.0, 0.0, 5.0, 1.0)) == (0.0, 0.0)


class TestRampPhase:
    """Fit over a counter-ramp run."""

    def test_counter_ramp_shape(self) -> None:
        """Concave rise through step 255, flat afterwards."""
        output = run(ramp_config(), 2048)
        result = ramp_phase_fit(output.stream(0), output.thresholds, 8)
        assert result.saturation_step == 255
        assert result.window_end == 255
        assert np.all(np.diff(result.curve.values) >= 0)
        np.testing.assert_array_equal(result.curve.values[255:], 1.0)
        assert result.fit.c2 < 0
        assert result.fit.c1 > 0
        assert result.fit.r_squared > 0.97

    def test_fixed_threshold_is_linear(self) -> None:
        """A constant rate gives an almost straight curve over the whole run."""
        base = default_config()
        config = GeneratorConfig(base.polynomial, base.seed, base.m, base.streams, Fixed(127))
        output = run(config, 4096)
        result = ramp_phase_fit(output.stream(0), output.thresholds, 8)
        assert result.saturation_step is None
        assert result.window_end == 4095
        assert abs(result.fit.c2) < 0.15
