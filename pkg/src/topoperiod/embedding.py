"""Sliding-window (time-delay) embedding into R^(n+1)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import SeriesTooShortError
from .series import TimeSeries

__all__ = ["PointCloud", "swe"]


@dataclass(frozen=True, slots=True)
class PointCloud:
    """SWE points with their time indices.

    ``points[j] = [f_j, f_{j+d}, ..., f_{j+nd}]`` and the time index of point
    j is the subscript of its last component, ``j + n*d``; consecutive points
    therefore carry consecutive time indices.
    """

    points: NDArray[np.float64]
    time_indices: NDArray[np.int64]
    n: int
    d: int

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=np.float64)
        times = np.asarray(self.time_indices, dtype=np.int64)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "time_indices", times)
        if points.ndim != 2 or points.shape[0] == 0:
            raise ValueError("points must be a non-empty 2-d array")
        if points.shape[1] != self.n + 1:
            raise ValueError(f"points must have dimension n+1 = {self.n + 1}")
        if times.shape != (points.shape[0],):
            raise ValueError("time_indices must match the point count")
        if times.size > 1 and not np.all(np.diff(times) == 1):
            raise ValueError("time_indices must increase by 1")

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def window(self, lo: int, hi: int) -> "PointCloud":
        """Sub-cloud of points with time index in [lo, hi] (inclusive)."""
        mask_lo = int(np.searchsorted(self.time_indices, lo, side="left"))
        mask_hi = int(np.searchsorted(self.time_indices, hi, side="right"))
        if mask_hi <= mask_lo:
            raise ValueError(f"window [{lo}, {hi}] selects no points")
        return PointCloud(
            points=self.points[mask_lo:mask_hi],
            time_indices=self.time_indices[mask_lo:mask_hi],
            n=self.n,
            d=self.d,
        )


def swe(ts: TimeSeries, n: int, d: int) -> PointCloud:
    """Embed ``ts`` into R^(n+1) with delay ``d``.

    A series f_0..f_k yields k - n*d + 1 points; point j is
    ``[f_j, f_{j+d}, ..., f_{j+nd}]`` with time index ``j + n*d``.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    values = ts.values
    k = values.size - 1
    span = n * d
    if k + 1 < span + 1:
        raise SeriesTooShortError(
            f"series of length {k + 1} is too short for n={n}, d={d} "
            f"(needs at least {span + 1} samples)"
        )
    count = k + 1 - span
    points = np.empty((count, n + 1), dtype=np.float64)
    for c in range(n + 1):
        points[:, c] = values[c * d : c * d + count]
    return PointCloud(
        points=points,
        time_indices=np.arange(span, k + 1, dtype=np.int64),
        n=n,
        d=d,
    )
