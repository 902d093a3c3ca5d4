"""
Cross- and auto-correlation of bit (or real) sequences.

    R_xy(f) = sum_n (x(n) - mean x)(y(n+f) - mean y) / (||x - mean x|| * ||y - mean y||)

The numerator runs only over indices where both n and n+f are in range; means
and norms are taken over the full sequences, so |R| shrinks as |f| grows.
Auto-correlation uses the same numerator with y = x and the squared norm as
denominator, and is exactly 1 at lag 0.

For integral inputs the direct method forms each numerator from exact integer
sums and rounds once, so results do not depend on summation order. The FFT
method agrees to within floating-point error.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Literal

import numpy as np
import numpy.typing as npt
import pandas as pd
from scipy import signal

from ..errors import LagOutOfRange, ZeroVariance

logger = logging.getLogger("progrand.stats")

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]
CorrelationMethod = Literal["direct", "fft"]

# Numerical slack allowed on |R| <= 1
CORRELATION_TOLERANCE = 1e-9


def as_sequence(x: npt.ArrayLike) -> FloatArray:
    """Lift bits (or any reals) to a 1-D float64 sequence of length >= 2."""
    seq = np.asarray(x, dtype=np.float64)
    if seq.ndim != 1:
        raise LagOutOfRange(f"correlation needs a 1-D sequence, got shape {seq.shape}")
    if seq.size < 2:
        raise LagOutOfRange(f"correlation needs N >= 2, got N = {seq.size}")
    return seq


# Integral inputs up to this magnitude keep every product sum inside int64
_EXACT_LIMIT = 1 << 16


@dataclass(frozen=True)
class _Centered:
    """
    A sequence minus its mean, with its squared norm.

    Integral inputs (bit streams) also keep the raw int64 values and their
    prefix sums, so lagged numerators are formed from exact integer sums and
    rounded once. Real inputs fall back to float dot products, whose summation
    order is up to numpy.
    """

    values: FloatArray
    sum_sq: float
    ints: IntArray | None = None
    prefix: IntArray | None = None


def _centered(x: FloatArray, name: str) -> _Centered:
    if np.all(x == x[0]):
        raise ZeroVariance(f"{name} is constant ({x[0]:g}); correlation is undefined")
    xc = x - x.mean()
    if np.all(x == np.rint(x)) and float(np.abs(x).max()) <= _EXACT_LIMIT:
        ints = x.astype(np.int64)
        n = ints.size
        total = int(ints.sum())
        sum_sq = (n * int(np.dot(ints, ints)) - total * total) / n
        prefix = np.concatenate(([0], np.cumsum(ints)))
        return _Centered(xc, sum_sq, ints, prefix)
    return _Centered(xc, float(np.dot(xc, xc)))


def _check_lag(f: int, n: int) -> None:
    if abs(f) > n - 2:
        raise LagOutOfRange(f"lag {f} outside [-{n - 2}, {n - 2}] for N = {n}")


def _lagged_sum(xp: _Centered, yp: _Centered, f: int) -> float:
    """sum_n (x(n) - mean x)(y(n+f) - mean y) over the overlap of the two sequences."""
    n = xp.values.size
    x0, x1, y0, y1 = (0, n - f, f, n) if f >= 0 else (-f, n, 0, n + f)
    if xp.ints is None or yp.ints is None or xp.prefix is None or yp.prefix is None:
        return float(np.dot(xp.values[x0:x1], yp.values[y0:y1]))

    # N^2 * numerator, all in Python ints
    sxy = int(np.dot(xp.ints[x0:x1], yp.ints[y0:y1]))
    sx = int(xp.prefix[x1] - xp.prefix[x0])
    sy = int(yp.prefix[y1] - yp.prefix[y0])
    tx = int(xp.prefix[-1])
    ty = int(yp.prefix[-1])
    overlap = x1 - x0
    scaled = n * n * sxy - n * ty * sx - n * tx * sy + overlap * tx * ty
    return scaled / (n * n)


def _prepare_pair(x: npt.ArrayLike, y: npt.ArrayLike) -> tuple[FloatArray, FloatArray]:
    xs = as_sequence(x)
    ys = as_sequence(y)
    if xs.size != ys.size:
        raise LagOutOfRange(f"sequences differ in length: {xs.size} vs {ys.size}")
    return xs, ys


def cross_correlation(x: npt.ArrayLike, y: npt.ArrayLike, f: int) -> float:
    """
    R_xy at lag f.

    Raises:
        ZeroVariance: either sequence is constant
        LagOutOfRange: |f| > N - 2
    """
    xs, ys = _prepare_pair(x, y)
    _check_lag(f, xs.size)
    xp = _centered(xs, "x")
    yp = _centered(ys, "y")
    return _lagged_sum(xp, yp, f) / (math.sqrt(xp.sum_sq) * math.sqrt(yp.sum_sq))


def auto_correlation(x: npt.ArrayLike, f: int) -> float:
    """R_xx at lag f; exactly 1.0 at f = 0."""
    xs = as_sequence(x)
    _check_lag(f, xs.size)
    xp = _centered(xs, "x")
    if f == 0:
        return 1.0
    return _lagged_sum(xp, xp, f) / xp.sum_sq


def cyclic_correlation(x: npt.ArrayLike, y: npt.ArrayLike, f: int) -> float:
    """
    Periodic bipolar correlation (1/N) * sum_n a(n) b((n + f) mod N), with
    a = 1 - 2x and b = 1 - 2y for 0/1 inputs.

    Over one full period of an m-sequence, two shifts give 1 when aligned and
    -1/(2^n - 1) otherwise.
    """
    xs, ys = _prepare_pair(x, y)
    if not (np.isin(xs, (0.0, 1.0)).all() and np.isin(ys, (0.0, 1.0)).all()):
        raise ValueError("cyclic correlation is defined on 0/1 sequences")
    a = 1 - 2 * xs.astype(np.int64)
    b = 1 - 2 * ys.astype(np.int64)
    return int(np.dot(a, np.roll(b, -f))) / xs.size


def _lag_order(max_lag: int, exclude_zero: bool) -> list[int]:
    """0, -1, +1, -2, +2, ...: the tie-break order for maximum scans."""
    order = [] if exclude_zero else [0]
    for k in range(1, max_lag + 1):
        order.extend((-k, k))
    return order


def correlation_values(
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    lags: list[int],
    method: CorrelationMethod = "direct",
    auto: bool = False,
) -> FloatArray:
    """R at each requested lag; `auto` uses the auto-correlation denominator."""
    xs, ys = _prepare_pair(x, y)
    n = xs.size
    for f in lags:
        _check_lag(f, n)
    xp = _centered(xs, "x")
    yp = _centered(ys, "y")
    denom = xp.sum_sq if auto else math.sqrt(xp.sum_sq) * math.sqrt(yp.sum_sq)

    if method == "fft":
        full = signal.correlate(yp.values, xp.values, mode="full", method="fft")
        numerators = full[np.asarray(lags, dtype=np.int64) + n - 1]
        values = numerators / denom
    else:
        values = np.array([_lagged_sum(xp, yp, f) for f in lags], dtype=np.float64) / denom

    if auto:
        values[np.asarray(lags) == 0] = 1.0
    return values


def default_max_lag(n: int) -> int:
    """min(1000, N/10), kept within [1, N - 2]."""
    return max(1, min(1000, n // 10, n - 2))


def max_abs_correlation(
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    max_lag: int,
    exclude_zero_lag: bool | None = None,
    method: CorrelationMethod = "direct",
) -> tuple[int, float]:
    """
    Signed value of greatest |R| over f in [-max_lag, max_lag].

    Lag 0 is skipped when `exclude_zero_lag` is set, or by default when `y` is
    the same object as `x`. Ties go to the smallest |f|, then the negative lag.
    """
    report = correlation_report(x, y, max_lag, exclude_zero_lag, method)
    return report.max_abs_lag, report.max_abs_value


def max_abs_autocorrelation(
    x: npt.ArrayLike, max_lag: int, method: CorrelationMethod = "direct"
) -> tuple[int, float]:
    """Strongest auto-correlation at a non-zero lag."""
    report = correlation_report(x, x, max_lag, True, method)
    return report.max_abs_lag, report.max_abs_value


# --- Reports ---


@dataclass(frozen=True)
class CorrelationReport:
    """Lag axis, R at each lag, and the strongest (signed) value."""

    lags: tuple[int, ...]
    values: tuple[float, ...]
    max_abs_lag: int
    max_abs_value: float
    exclude_zero_lag: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "max_abs_lag": self.max_abs_lag,
            "max_abs_value": self.max_abs_value,
            "exclude_zero_lag": self.exclude_zero_lag,
            "lags": list(self.lags),
            "values": list(self.values),
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"lag": list(self.lags), "value": list(self.values)})


def correlation_report(
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    max_lag: int | None = None,
    exclude_zero_lag: bool | None = None,
    method: CorrelationMethod = "direct",
) -> CorrelationReport:
    """Scan f in [-max_lag, max_lag] in ascending lag order and locate the max |R|."""
    same = y is x
    exclude = same if exclude_zero_lag is None else exclude_zero_lag
    xs, ys = _prepare_pair(x, y)
    n = xs.size
    lag_limit = default_max_lag(n) if max_lag is None else max_lag
    if lag_limit < 0 or (exclude and lag_limit == 0):
        raise LagOutOfRange(f"max_lag {lag_limit} leaves no lag to scan")
    _check_lag(lag_limit, n)

    lags = list(range(-lag_limit, lag_limit + 1))
    values = correlation_values(xs, ys, lags, method, auto=same)

    by_lag = dict(zip(lags, values.tolist()))
    best_lag = 0
    best_value = 0.0
    found = False
    for f in _lag_order(lag_limit, exclude):
        v = by_lag[f]
        if not found or abs(v) > abs(best_value):
            best_lag, best_value, found = f, v, True

    logger.debug(f"Correlation scan N={n}, max_lag={lag_limit}: max |R| {best_value:.6f} at {best_lag}")
    return CorrelationReport(
        lags=tuple(lags),
        values=tuple(values.tolist()),
        max_abs_lag=best_lag,
        max_abs_value=best_value,
        exclude_zero_lag=exclude,
    )
