"""Period estimation from symbolic return times.

A landmark's return-time vector t_i interleaves dwell steps (consecutive
indices while the trajectory stays in the cell) with large jumps (the time
spent away).  The spacing between the end points of consecutive dominant
jumps measures one full revolution: jump length plus the dwell accumulated
in between.  Estimates from all landmarks whose re-entry spacings are
approximately equal are averaged.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .landmarks import SymbolicSequence

__all__ = ["PeriodEstimate", "jumps", "dominant_jumps", "estimate_period"]

# Sorted jump values must fall by at least this factor somewhere for the
# values above the gap to count as dominant.
MIN_DOMINANT_RATIO = 2.0
# A landmark is accepted only if max/min of its re-entry spacings is below this.
EQUAL_SPREAD_TOLERANCE = 1.5


@dataclass(frozen=True, slots=True)
class PeriodEstimate:
    """Mean/std of per-landmark period proxies; ``mean_period`` None when
    no landmark produced an accepted proxy."""

    mean_period: float | None
    std_period: float | None
    per_landmark: tuple[float, ...]

    def __post_init__(self) -> None:
        if (self.mean_period is None) != (len(self.per_landmark) == 0):
            raise ValueError("mean_period is None exactly when per_landmark is empty")
        if (self.mean_period is None) != (self.std_period is None):
            raise ValueError("mean_period and std_period must be None together")
        if self.mean_period is not None:
            arr = np.asarray(self.per_landmark, dtype=np.float64)
            if not (
                np.isclose(self.mean_period, arr.mean())
                and np.isclose(self.std_period, arr.std())
            ):
                raise ValueError(
                    "mean/std must be the sample statistics of per_landmark"
                )

    @property
    def is_none(self) -> bool:
        return self.mean_period is None


NO_PERIOD = PeriodEstimate(mean_period=None, std_period=None, per_landmark=())


def jumps(t_i: NDArray[np.int64]) -> NDArray[np.int64]:
    """Consecutive differences of an increasing time vector (empty if < 2 entries)."""
    t = np.asarray(t_i, dtype=np.int64)
    if t.size < 2:
        return np.empty(0, dtype=np.int64)
    return np.diff(t)


def dominant_jumps(j_i: NDArray[np.int64]) -> NDArray[np.int64]:
    """Positions (in time order) of the dominant values of a jump vector.

    The values are sorted descending and cut at the largest multiplicative
    gap between consecutive sorted values; the gap must reach a factor of
    2, otherwise no jump is dominant.  A single-element vector is dominant
    at position 0.
    """
    j = np.asarray(j_i, dtype=np.int64)
    if j.size == 0:
        raise ValueError("jump vector is empty")
    if j.size == 1:
        return np.array([0], dtype=np.int64)
    s = np.sort(j)[::-1].astype(np.float64)
    prev, nxt = s[:-1], s[1:]
    ratios = np.where(
        nxt > 0,
        prev / np.where(nxt > 0, nxt, 1.0),
        np.where(prev > 0, np.inf, 1.0),
    )
    cut = int(np.argmax(ratios))
    if ratios[cut] < MIN_DOMINANT_RATIO or s[cut] <= 0:
        return np.empty(0, dtype=np.int64)
    threshold = s[cut]  # strictly above the gap: exactly cut+1 values qualify
    return np.flatnonzero(j >= threshold).astype(np.int64)


def estimate_period(sym: SymbolicSequence) -> PeriodEstimate:
    """Aggregate per-landmark period proxies from a hard symbolic sequence.

    For each landmark with at least two dominant jumps, the proxy is the
    mean spacing of re-entry times (the time indices at which the dominant
    jumps end).  A landmark is accepted only if its spacings are
    approximately equal (max/min <= 1.5).  Returns the across-landmark mean
    and population standard deviation, or the no-period sentinel when no
    landmark qualifies.
    """
    if sym.mode != "hard":
        raise ValueError("estimate_period requires a hard symbolic sequence")
    proxies: list[float] = []
    for t_i in sym.return_times:
        j = jumps(t_i)
        if j.size == 0:
            continue
        dom = dominant_jumps(j)
        if dom.size < 2:
            continue
        reentry = np.asarray(t_i, dtype=np.int64)[dom + 1]  # jump at p ends at t[p+1]
        spacings = np.diff(reentry).astype(np.float64)
        if spacings.max() > EQUAL_SPREAD_TOLERANCE * spacings.min():
            continue
        proxies.append(float(spacings.mean()))
    if not proxies:
        return NO_PERIOD
    arr = np.asarray(proxies)
    return PeriodEstimate(
        mean_period=float(arr.mean()),
        std_period=float(arr.std()),
        per_landmark=tuple(proxies),
    )
