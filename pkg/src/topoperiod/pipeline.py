"""Rolling period search and experiment sweeps.

``chop_and_search`` slides a trailing window over the embedded series: for
each evaluation index i it takes the sub-cloud with time indices in
[max(0, i - M), i], scores its cyclicity by an H1 diagram norm, and runs the
landmark/return-time estimator when the score clears the threshold.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from scipy.spatial.distance import pdist

from .embedding import PointCloud, swe
from .errors import SeriesTooShortError
from .landmarks import assign_symbols, select_landmarks
from .period import NO_PERIOD, PeriodEstimate, estimate_period
from .persistence import diagram_norm, dominant_intervals, rips_persistence
from .series import GeneratorSpec, TimeSeries, generate

__all__ = [
    "PipelineConfig",
    "PeriodSeries",
    "cyclicity_score",
    "chop_and_search",
    "dimension_sweep",
    "noise_sweep",
    "period_series_to_csv",
    "period_series_to_json_dict",
    "write_period_series",
]


@dataclass(frozen=True, slots=True)
class PipelineConfig:
    """Parameters of the rolling search.

    ``threshold_mode`` "relative" scales ``threshold`` by the window cloud's
    diameter (unit-free); "absolute" uses it as-is.  ``window`` is the
    trailing span M in time-index steps.
    """

    n: int = 2
    d: int = 5
    window: int = 130
    stride: int = 5
    k: int = 4
    landmark_method: str = "maxmin"
    landmark_seed: int = 0
    norm_kind: str = "L2"
    threshold: float = 0.05
    threshold_mode: str = "relative"
    cap: float | str = "auto"

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 1:
            raise ValueError("n and d must be >= 1")
        if self.window < self.n * self.d + 2:
            raise ValueError(f"window must be >= n*d + 2 = {self.n * self.d + 2}")
        if self.stride < 1:
            raise ValueError("stride must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.threshold < 0:
            raise ValueError("threshold must be >= 0")
        if self.threshold_mode not in ("relative", "absolute"):
            raise ValueError("threshold_mode must be 'relative' or 'absolute'")
        if self.norm_kind not in ("L1", "L2"):
            raise ValueError("norm_kind must be 'L1' or 'L2'")
        if self.landmark_method not in ("maxmin", "kmeans"):
            raise ValueError("landmark_method must be 'maxmin' or 'kmeans'")
        if not isinstance(self.cap, str) and self.cap <= 0:
            raise ValueError("cap must be positive or 'auto'")


@dataclass(frozen=True, slots=True)
class PeriodSeries:
    """Per-evaluation-index cyclicity score and period estimate."""

    indices: NDArray[np.int64]
    scores: NDArray[np.float64]
    estimates: tuple[PeriodEstimate, ...]
    config: PipelineConfig

    def __len__(self) -> int:
        return int(self.indices.size)


def cyclicity_score(
    window_cloud: PointCloud | NDArray[np.float64],
    kind: str = "L2",
    cap: float | str = "auto",
) -> float:
    """H1 diagram norm of the window's Rips persistence (0 for a degenerate window)."""
    pts = window_cloud.points if isinstance(window_cloud, PointCloud) else np.asarray(window_cloud, float)
    if pts.shape[0] < 3:
        raise ValueError("cyclicity_score needs at least 3 points")
    return diagram_norm(rips_persistence(pts, cap=cap), dim=1, kind=kind)


def chop_and_search(ts: TimeSeries, cfg: PipelineConfig) -> PeriodSeries:
    """Evaluate the rolling window at every stride-th time index.

    The evaluation grid starts at the first embedded time index (n*d), so a
    stride-s run is the exact subsequence of the stride-1 run.  Windows
    whose cyclicity score stays below the threshold, and windows too small
    to host the landmarks, record the no-period sentinel.
    """
    span = cfg.n * cfg.d
    if len(ts) <= span + 2:
        raise SeriesTooShortError(
            f"series of length {len(ts)} is too short for n={cfg.n}, d={cfg.d}"
        )
    cloud = swe(ts, cfg.n, cfg.d)
    k_last = len(ts) - 1
    grid = np.arange(span, k_last + 1, cfg.stride, dtype=np.int64)

    scores = np.zeros(grid.size, dtype=np.float64)
    estimates: list[PeriodEstimate] = []
    for gi, i in enumerate(grid):
        lo = max(0, int(i) - cfg.window)
        sub = cloud.window(lo, int(i))
        if len(sub) < 3:
            estimates.append(NO_PERIOD)
            continue
        diag = rips_persistence(sub.points, cap=cfg.cap)
        score = diagram_norm(diag, dim=1, kind=cfg.norm_kind)
        scores[gi] = score
        theta = cfg.threshold
        if cfg.threshold_mode == "relative":
            theta = cfg.threshold * float(pdist(sub.points).max())
        if score >= theta and len(sub) >= cfg.k:
            lm = select_landmarks(sub, cfg.k, cfg.landmark_method, cfg.landmark_seed)
            sym = assign_symbols(sub, lm, mode="hard")
            estimates.append(estimate_period(sym))
        else:
            estimates.append(NO_PERIOD)
    return PeriodSeries(
        indices=grid,
        scores=scores,
        estimates=tuple(estimates),
        config=cfg,
    )


def dimension_sweep(
    ts: TimeSeries,
    dims: list[int],
    d: int,
    cap: float | str = "auto",
    count: int = 3,
) -> list[dict]:
    """Top ``count`` H1 interval lengths per embedding dimension.

    ``dims`` are vector dimensions (n + 1).  Dimensions the series cannot
    host yield an ``error`` entry instead of interval lengths.
    """
    results: list[dict] = []
    for dim in dims:
        if dim < 2:
            raise ValueError("embedding dimensions must be >= 2")
        entry: dict = {"dim": int(dim), "intervals": None, "error": None}
        try:
            cloud = swe(ts, dim - 1, d)
            diag = rips_persistence(cloud.points, cap=cap)
            entry["intervals"] = dominant_intervals(diag, dim=1, count=count)
        except SeriesTooShortError as exc:
            entry["error"] = str(exc)
        results.append(entry)
    return results


def noise_sweep(
    base: GeneratorSpec,
    levels: list[float],
    reps: int,
    n: int = 2,
    d: int = 5,
    cap: float | str = "auto",
) -> list[dict]:
    """Average diagram norms and interval-length profiles per noise level.

    Each repetition regenerates the base series at the given noise level
    with seed ``base.seed + rep``; per level the L1/L2 norms and the
    descending interval-length profile (zero-padded to equal length) are
    averaged across repetitions.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    results: list[dict] = []
    for level in levels:
        l1s = np.empty(reps)
        l2s = np.empty(reps)
        profiles: list[NDArray[np.float64]] = []
        for rep in range(reps):
            spec = replace(base, noise_level=float(level), seed=base.seed + rep)
            cloud = swe(generate(spec), n, d)
            diag = rips_persistence(cloud.points, cap=cap)
            l1s[rep] = diagram_norm(diag, dim=1, kind="L1")
            l2s[rep] = diagram_norm(diag, dim=1, kind="L2")
            finite = diag.h1[np.isfinite(diag.h1[:, 1])]
            profiles.append(np.sort(finite[:, 1] - finite[:, 0])[::-1])
        width = max((p.size for p in profiles), default=0)
        mean_profile = np.zeros(width, dtype=np.float64)
        for p in profiles:
            mean_profile[: p.size] += p
        mean_profile /= reps
        results.append(
            {
                "level": float(level),
                "l1_mean": float(l1s.mean()),
                "l2_mean": float(l2s.mean()),
                "profile": mean_profile,
            }
        )
    return results


def period_series_to_csv(ps: PeriodSeries) -> str:
    """CSV text with header ``index,score,period_mean,period_std``.

    Periods are in sample counts; no-period rows leave the period fields empty.
    """
    lines = ["index,score,period_mean,period_std"]
    for i, score, est in zip(ps.indices, ps.scores, ps.estimates):
        if est.is_none:
            lines.append(f"{int(i)},{repr(float(score))},,")
        else:
            lines.append(
                f"{int(i)},{repr(float(score))},"
                f"{repr(float(est.mean_period))},{repr(float(est.std_period))}"
            )
    return "\n".join(lines) + "\n"


def period_series_to_json_dict(ps: PeriodSeries) -> dict:
    rows = []
    for i, score, est in zip(ps.indices, ps.scores, ps.estimates):
        rows.append(
            {
                "index": int(i),
                "score": float(score),
                "period_mean": None if est.is_none else float(est.mean_period),
                "period_std": None if est.is_none else float(est.std_period),
            }
        )
    return {"units": "periods in sample counts", "rows": rows}


def write_period_series(ps: PeriodSeries, path: str | Path, fmt: str = "csv") -> None:
    path = Path(path)
    if fmt == "csv":
        path.write_text(period_series_to_csv(ps), encoding="utf-8", newline="\n")
    elif fmt == "json":
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            json.dump(period_series_to_json_dict(ps), fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        raise ValueError(f"unknown period-series format {fmt!r}")
