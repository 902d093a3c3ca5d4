"""
Cumulative count of 1's under a dynamic threshold, and its quadratic fit.

While a counter ramp raises the threshold one step per sample, P(1) falls
linearly, so the normalized cumulative count grows as a concave quadratic in
normalized time; once the threshold saturates no further 1's appear and the
curve stays flat at 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt
import pandas as pd

from ..errors import DegenerateDesign, NoOnes
from ..threshold import saturation_index

logger = logging.getLogger("progrand.stats")

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class CumulativeCount:
    """Normalized time in [0, 1] against normalized running count of 1's."""

    t: FloatArray
    values: FloatArray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.t, "cumulative_count": self.values})


@dataclass(frozen=True)
class QuadraticFit:
    """v ~ c2*t^2 + c1*t + c0."""

    c2: float
    c1: float
    c0: float
    r_squared: float

    def __call__(self, t: npt.ArrayLike) -> FloatArray:
        ts = np.asarray(t, dtype=np.float64)
        return (self.c2 * ts + self.c1) * ts + self.c0

    def to_dict(self) -> dict[str, Any]:
        return {"c2": self.c2, "c1": self.c1, "c0": self.c0, "r_squared": self.r_squared}


@dataclass(frozen=True)
class RampFit:
    """Quadratic fit over the ramp phase of a dynamic run."""

    fit: QuadraticFit
    window_end: int
    saturation_step: int | None
    curve: CumulativeCount


def _normalized_time(count: int) -> FloatArray:
    if count == 1:
        return np.zeros(1, dtype=np.float64)
    return np.arange(count, dtype=np.float64) / (count - 1)


def cumulative_count_curve(bits: npt.ArrayLike) -> CumulativeCount:
    """
    Running count of 1's divided by the total number of 1's.

    Raises:
        NoOnes: the sequence holds no 1's
    """
    seq = np.asarray(bits)
    total = int(np.count_nonzero(seq))
    if total == 0:
        raise NoOnes(f"sequence of length {seq.size} contains no 1's; cannot normalize")
    running = np.cumsum(seq != 0, dtype=np.int64)
    return CumulativeCount(t=_normalized_time(seq.size), values=running / total)


def quadratic_fit(t: npt.ArrayLike, v: npt.ArrayLike) -> QuadraticFit:
    """
    Ordinary least squares of v against [t^2, t, 1].

    Raises:
        DegenerateDesign: fewer than 3 distinct t, or mismatched lengths
    """
    ts = np.asarray(t, dtype=np.float64)
    vs = np.asarray(v, dtype=np.float64)
    if ts.shape != vs.shape or ts.ndim != 1:
        raise DegenerateDesign(f"t and v must be equal-length 1-D arrays, got {ts.shape} and {vs.shape}")
    if np.unique(ts).size < 3:
        raise DegenerateDesign(f"quadratic fit needs 3 distinct t values, got {np.unique(ts).size}")

    design = np.column_stack((ts * ts, ts, np.ones_like(ts)))
    coeffs, *_ = np.linalg.lstsq(design, vs, rcond=None)
    c2, c1, c0 = (float(c) for c in coeffs)

    residual = vs - design @ coeffs
    ss_res = float(np.dot(residual, residual))
    centered = vs - vs.mean()
    ss_tot = float(np.dot(centered, centered))
    r_squared = 1.0 if ss_tot == 0.0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return QuadraticFit(c2=c2, c1=c1, c0=c0, r_squared=r_squared)


def fit_derivative(fit: QuadraticFit) -> tuple[float, float]:
    """d/dt of the fit as (slope, intercept) = (2*c2, c1)."""
    return 2.0 * fit.c2, fit.c1


def ramp_phase_fit(bits: npt.ArrayLike, thresholds: npt.ArrayLike, m: int) -> RampFit:
    """
    Fit the cumulative count from step 0 through the saturation step inclusive,
    with time re-normalized to [0, 1] over that window. Without saturation the
    whole run is the window.
    """
    seq = np.asarray(bits)
    trace = np.asarray(thresholds, dtype=np.int64)
    curve = cumulative_count_curve(seq)

    saturation = saturation_index(trace, m)
    window_end = seq.size - 1 if saturation is None else saturation
    window = window_end + 1
    t = _normalized_time(window)
    fit = quadratic_fit(t, curve.values[:window])
    logger.debug(
        f"Ramp-phase fit over steps 0..{window_end}: "
        f"c2={fit.c2:.4f} c1={fit.c1:.4f} c0={fit.c0:.4f} r2={fit.r_squared:.5f}"
    )
    return RampFit(fit=fit, window_end=window_end, saturation_step=saturation, curve=curve)
