"""Landmark selection and symbolic dynamics over a point cloud.

Landmarks are reference points; assigning every cloud point to its nearest
landmark (its Voronoi cell) converts the cloud's temporal ordering into a
symbolic sequence whose per-landmark return times feed the period estimator.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from scipy.spatial.distance import cdist

from .embedding import PointCloud

__all__ = [
    "Landmarks",
    "SymbolicSequence",
    "select_landmarks",
    "assign_symbols",
    "symbols_to_csv",
    "write_symbols_csv",
]


@dataclass(frozen=True, slots=True)
class Landmarks:
    """k distinct cloud points chosen as references."""

    indices: NDArray[np.int64]
    coordinates: NDArray[np.float64]
    method: str

    def __post_init__(self) -> None:
        idx = np.asarray(self.indices, dtype=np.int64)
        coords = np.asarray(self.coordinates, dtype=np.float64)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "coordinates", coords)
        if idx.size == 0:
            raise ValueError("landmarks cannot be empty")
        if np.unique(idx).size != idx.size:
            raise ValueError("landmark indices must be distinct")
        if coords.shape[0] != idx.size:
            raise ValueError("coordinates must match indices")

    def __len__(self) -> int:
        return int(self.indices.size)


@dataclass(frozen=True, slots=True)
class SymbolicSequence:
    """Per-point landmark labels plus per-landmark return times.

    ``labels`` holds one landmark id per cloud point in hard mode, or a
    tuple of ids (all landmarks within (1 + soft_slack) of the nearest
    distance) in soft mode.  ``return_times`` lists, for each landmark, the
    increasing time indices of the points it is assigned.
    """

    labels: tuple
    return_times: tuple[NDArray[np.int64], ...]
    mode: str
    time_indices: NDArray[np.int64]

    @property
    def k(self) -> int:
        return len(self.return_times)


def select_landmarks(
    cloud: PointCloud | NDArray[np.float64],
    k: int,
    method: str = "maxmin",
    seed: int = 0,
) -> Landmarks:
    """Choose ``k`` landmarks by greedy max-min or by k-means.

    maxmin starts from point index 0 and repeatedly adds the point whose
    distance to the chosen set is largest (ties to the lowest index); it is
    fully deterministic.  kmeans runs k-means++ seeded Lloyd iterations
    (relative inertia change below 1e-6 or 100 iterations) and then maps
    each centroid to its nearest cloud point, keeping indices distinct.
    """
    pts = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud, dtype=np.float64)
    m = pts.shape[0]
    if not 1 <= k <= m:
        raise ValueError(f"k must be in [1, {m}], got {k}")
    if method == "maxmin":
        chosen = np.empty(k, dtype=np.int64)
        chosen[0] = 0
        mind = cdist(pts, pts[0:1]).ravel()
        for i in range(1, k):
            nxt = int(np.argmax(mind))  # argmax takes the first max: lowest index
            chosen[i] = nxt
            np.minimum(mind, cdist(pts, pts[nxt : nxt + 1]).ravel(), out=mind)
        return Landmarks(indices=chosen, coordinates=pts[chosen], method="maxmin")
    if method == "kmeans":
        centroids = _kmeans_centroids(pts, k, seed)
        d = cdist(centroids, pts)
        chosen = np.empty(k, dtype=np.int64)
        taken = np.zeros(m, dtype=bool)
        for i in range(k):
            order = np.argsort(d[i], kind="stable")
            for cand in order:
                if not taken[cand]:
                    chosen[i] = cand
                    taken[cand] = True
                    break
        return Landmarks(indices=chosen, coordinates=pts[chosen], method="kmeans")
    raise ValueError(f"method must be 'maxmin' or 'kmeans', got {method!r}")


def _kmeans_centroids(pts: NDArray[np.float64], k: int, seed: int) -> NDArray[np.float64]:
    rng = np.random.default_rng(seed)
    m = pts.shape[0]
    centroids = np.empty((k, pts.shape[1]), dtype=np.float64)
    centroids[0] = pts[rng.integers(m)]
    closest = np.square(cdist(pts, centroids[0:1]).ravel())
    for i in range(1, k):
        total = closest.sum()
        if total <= 0:  # all points coincide with chosen centroids
            centroids[i] = pts[rng.integers(m)]
            continue
        centroids[i] = pts[rng.choice(m, p=closest / total)]
        np.minimum(closest, np.square(cdist(pts, centroids[i : i + 1]).ravel()), out=closest)

    inertia = np.inf
    for _ in range(100):
        d2 = np.square(cdist(pts, centroids))
        assign = np.argmin(d2, axis=1)
        new_inertia = float(d2[np.arange(m), assign].sum())
        for i in range(k):
            members = pts[assign == i]
            if members.shape[0] > 0:  # empty cluster keeps its centroid
                centroids[i] = members.mean(axis=0)
        if inertia - new_inertia <= 1e-6 * max(inertia, 1e-300):
            break
        inertia = new_inertia
    return centroids


def assign_symbols(
    cloud: PointCloud,
    lm: Landmarks,
    mode: str = "hard",
    soft_slack: float = 0.1,
) -> SymbolicSequence:
    """Label every cloud point by its nearest landmark(s).

    Hard mode assigns the unique nearest landmark (ties to the lowest id);
    soft mode assigns every landmark within (1 + soft_slack) times the
    nearest distance.  Return times are per-landmark increasing time indices.
    """
    if mode not in ("hard", "soft"):
        raise ValueError(f"mode must be 'hard' or 'soft', got {mode!r}")
    if soft_slack < 0:
        raise ValueError("soft_slack must be >= 0")
    if lm.coordinates.shape[1] != cloud.points.shape[1]:
        raise ValueError("landmark dimension does not match the cloud")
    if int(lm.indices.max()) >= len(cloud):
        raise ValueError("landmark indices exceed the cloud size")
    d = cdist(cloud.points, lm.coordinates)
    k = len(lm)
    times = cloud.time_indices
    if mode == "hard":
        labels = np.argmin(d, axis=1)  # first minimum: lowest landmark id
        return_times = tuple(times[labels == i] for i in range(k))
        return SymbolicSequence(
            labels=tuple(int(v) for v in labels),
            return_times=return_times,
            mode="hard",
            time_indices=times.copy(),
        )
    nearest = d.min(axis=1)
    cells = d <= (1.0 + soft_slack) * nearest[:, None]
    labels = tuple(tuple(int(i) for i in np.flatnonzero(row)) for row in cells)
    return_times = tuple(times[cells[:, i]] for i in range(k))
    return SymbolicSequence(
        labels=labels,
        return_times=return_times,
        mode="soft",
        time_indices=times.copy(),
    )


def symbols_to_csv(sym: SymbolicSequence) -> str:
    """CSV text with header ``time_index,label``; soft labels join ids with ';'."""
    lines = ["time_index,label"]
    for t, lab in zip(sym.time_indices, sym.labels):
        cell = str(lab) if sym.mode == "hard" else ";".join(str(v) for v in lab)
        lines.append(f"{int(t)},{cell}")
    return "\n".join(lines) + "\n"


def write_symbols_csv(sym: SymbolicSequence, path: str | Path) -> None:
    Path(path).write_text(symbols_to_csv(sym), encoding="utf-8", newline="\n")
