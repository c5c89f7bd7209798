"""Spectral baseline: dominant-frequency period estimation.

``find_frequency`` removes a linear trend by least squares, fits an
autoregressive model by Yule-Walker with AIC order selection, evaluates the
AR spectral density on a 500-point frequency grid over [0, 0.5], and returns
the rounded inverse of the peak frequency when the peak is pronounced
(greater than 10 times the spectrum median over the positive frequencies),
or 1 when no period is found.  The relative peak rule is a deliberate
approximation of the reference implementation's absolute cutoff; it
reproduces the no-period behavior on white noise without depending on the
reference's spectrum scaling.

Known outputs are 1 ("no period") or an integer in [2, 998]; 998 is the
inverse of the first positive grid frequency, 0.5/499.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from .errors import SeriesTooShortError
from .series import TimeSeries

__all__ = [
    "BaselineSummary",
    "find_frequency",
    "rolling_baseline",
    "summary_to_csv",
    "summary_to_json_dict",
    "write_summary",
]

N_FREQ = 500
MAX_AR_ORDER = 24
MAX_PERIOD = 998
PEAK_OVER_MEDIAN = 10.0


@dataclass(frozen=True, slots=True)
class BaselineSummary:
    """Rolling-window statistics of the baseline period estimates."""

    window: int
    count: int
    mean: float
    sd: float
    min: int
    max: int


def _detrend(values: NDArray[np.float64]) -> NDArray[np.float64]:
    t = np.arange(values.size, dtype=np.float64)
    t -= t.mean()
    x = values - values.mean()
    denom = float(np.dot(t, t))
    slope = float(np.dot(t, x)) / denom if denom > 0 else 0.0
    return x - slope * t


def _levinson(autocov: NDArray[np.float64], max_order: int):
    """Yule-Walker via Levinson-Durbin.

    Returns (coeffs per order, prediction variance per order): coeffs[p] is
    the length-p AR coefficient vector, variances[p] the innovation variance
    sigma^2_p.  Orders whose recursion degenerates (non-positive variance)
    are truncated away.
    """
    coeffs: list[NDArray[np.float64]] = [np.empty(0)]
    variances = [float(autocov[0])]
    phi = np.zeros(max_order, dtype=np.float64)
    var = float(autocov[0])
    for p in range(1, max_order + 1):
        acc = autocov[p] - float(np.dot(phi[: p - 1], autocov[p - 1 : 0 : -1]))
        kappa = acc / var
        new_phi = phi.copy()
        new_phi[p - 1] = kappa
        new_phi[: p - 1] = phi[: p - 1] - kappa * phi[: p - 1][::-1]
        var = var * (1.0 - kappa * kappa)
        if not (np.isfinite(var) and var > 0):
            break
        phi = new_phi
        coeffs.append(phi[:p].copy())
        variances.append(var)
    return coeffs, variances


def find_frequency(ts: TimeSeries | NDArray[np.float64]) -> int:
    """Period of the dominant AR-spectrum frequency, or 1 when none stands out."""
    values = ts.values if isinstance(ts, TimeSeries) else np.asarray(ts, dtype=np.float64)
    n = values.size
    if n < 8:
        raise SeriesTooShortError(f"find_frequency needs at least 8 samples, got {n}")

    x = _detrend(values)
    c0 = float(np.dot(x, x)) / n
    if not (np.isfinite(c0) and c0 > 0):
        return 1  # constant after detrending: no structure

    max_order = min(n - 1, MAX_AR_ORDER)
    autocov = np.empty(max_order + 1, dtype=np.float64)
    for lag in range(max_order + 1):
        autocov[lag] = float(np.dot(x[: n - lag], x[lag:])) / n

    coeffs, variances = _levinson(autocov, max_order)
    orders = np.arange(len(variances), dtype=np.float64)
    aic = n * np.log(np.asarray(variances)) + 2.0 * orders
    best = int(np.argmin(aic))  # ties resolve to the smallest order
    phi = coeffs[best]
    # scale the innovation variance as n/(n - (p+1)); constant per series,
    # so it cannot change which grid frequency wins
    var_adj = variances[best]
    if n - (best + 1) > 0:
        var_adj *= n / (n - (best + 1))

    freqs = np.linspace(0.0, 0.5, N_FREQ)
    if best == 0:
        return 1  # flat spectrum
    response = np.abs(
        1.0 - np.exp(-2j * np.pi * np.outer(freqs, np.arange(1, best + 1))) @ phi
    )
    spectrum = var_adj / np.square(response)

    positive = spectrum[1:]
    peak_pos = int(np.argmax(positive)) + 1
    if positive[peak_pos - 1] <= PEAK_OVER_MEDIAN * float(np.median(positive)):
        return 1
    period = int(math.floor(1.0 / freqs[peak_pos] + 0.5))
    return min(period, MAX_PERIOD)


def rolling_baseline(
    ts: TimeSeries, window: int
) -> tuple[NDArray[np.int64], BaselineSummary]:
    """Baseline estimates over trailing windows.

    The estimate at index i (1-based sample count) uses samples (i - window,
    i]; i runs from ``window`` to the series length inclusive, giving
    ``length - window + 1`` estimates.
    """
    values = ts.values
    length = values.size
    if window > length:
        raise ValueError(f"window {window} exceeds series length {length}")
    if window < 8:
        raise ValueError("window must be >= 8 samples")
    periods = np.empty(length - window + 1, dtype=np.int64)
    for pos, i in enumerate(range(window, length + 1)):
        periods[pos] = find_frequency(values[i - window : i])
    summary = BaselineSummary(
        window=window,
        count=int(periods.size),
        mean=float(periods.mean()),
        sd=float(periods.std(ddof=1)) if periods.size > 1 else 0.0,
        min=int(periods.min()),
        max=int(periods.max()),
    )
    return periods, summary


def summary_to_csv(summary: BaselineSummary) -> str:
    """CSV text with header ``length,obs,mean,sd,min,max`` (length = window size)."""
    return (
        "length,obs,mean,sd,min,max\n"
        f"{summary.window},{summary.count},{repr(summary.mean)},"
        f"{repr(summary.sd)},{summary.min},{summary.max}\n"
    )


def summary_to_json_dict(summary: BaselineSummary) -> dict:
    return {
        "length": summary.window,
        "obs": summary.count,
        "mean": summary.mean,
        "sd": summary.sd,
        "min": summary.min,
        "max": summary.max,
        "units": "periods in sample counts",
    }


def write_summary(summary: BaselineSummary, path: str | Path, fmt: str = "csv") -> None:
    path = Path(path)
    if fmt == "csv":
        path.write_text(summary_to_csv(summary), encoding="utf-8", newline="\n")
    elif fmt == "json":
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            json.dump(summary_to_json_dict(summary), fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        raise ValueError(f"unknown summary format {fmt!r}")
