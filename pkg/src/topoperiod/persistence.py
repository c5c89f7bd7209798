"""Vietoris-Rips 2-skeleton persistence in dimensions 0 and 1.

Filtration order: vertices at value 0, edge value = Euclidean distance,
triangle value = max of its edge values; ties broken by (dimension,
lexicographic vertex list).  The default cap is the enclosing radius
(min over points of the max distance to all others); at that radius the
complex is a cone, so every 1-cycle is dead and H0 is a single component.
Zero-length intervals are discarded from reported diagrams.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from numpy.typing import NDArray
from scipy.spatial.distance import pdist, squareform

from ._reduction import _h0_scan, _h1_pairs
from .embedding import PointCloud

__all__ = [
    "PersistenceDiagram",
    "rips_persistence",
    "diagram_norm",
    "dominant_intervals",
    "enclosing_radius",
    "diagram_to_csv",
    "diagram_to_json_dict",
    "write_diagram",
]

CloudLike = Union[PointCloud, NDArray[np.float64]]


@dataclass(frozen=True, slots=True)
class PersistenceDiagram:
    """Intervals per homology dimension, each row (birth, death).

    Deaths may be +inf (classes alive at the cap).  Rows are sorted by
    (birth, death) for deterministic serialization; as multisets the
    diagrams are order-free.
    """

    h0: NDArray[np.float64]
    h1: NDArray[np.float64]
    cap: float

    def intervals(self, dim: int) -> NDArray[np.float64]:
        if dim == 0:
            return self.h0
        if dim == 1:
            return self.h1
        raise ValueError("dim must be 0 or 1")


def _as_points(cloud: CloudLike) -> NDArray[np.float64]:
    if isinstance(cloud, PointCloud):
        return cloud.points
    pts = np.asarray(cloud, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError("cloud must be a 2-d array of points")
    return pts


def enclosing_radius(points: CloudLike) -> float:
    """min over points of the max distance to all others (0 for one point)."""
    pts = _as_points(points)
    if pts.shape[0] < 2:
        return 0.0
    dm = squareform(pdist(pts))
    return float(np.max(dm, axis=1).min())


def _sorted_intervals(rows: list[tuple[float, float]]) -> NDArray[np.float64]:
    if not rows:
        return np.empty((0, 2), dtype=np.float64)
    arr = np.asarray(rows, dtype=np.float64)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    return arr[order]


def rips_persistence(cloud: CloudLike, cap: float | str = "auto") -> PersistenceDiagram:
    """Persistence diagram of the Rips filtration over ``cloud`` up to ``cap``.

    ``cap="auto"`` uses the enclosing radius.  Reduction is over the
    two-element field; zero-length intervals are discarded.
    """
    pts = _as_points(cloud)
    n = pts.shape[0]
    if n == 0:
        raise ValueError("cloud is empty")
    if isinstance(cap, str):
        if cap != "auto":
            raise ValueError(f"cap must be a positive real or 'auto', got {cap!r}")
        cap_val = None
    else:
        cap_val = float(cap)
        if not (np.isfinite(cap_val) and cap_val > 0):
            raise ValueError("cap must be a positive real or 'auto'")

    if n == 1:
        return PersistenceDiagram(
            h0=np.array([[0.0, np.inf]]),
            h1=np.empty((0, 2)),
            cap=0.0 if cap_val is None else cap_val,
        )

    dm = squareform(pdist(pts))
    if cap_val is None:
        cap_val = float(np.max(dm, axis=1).min())

    iu, ju = np.triu_indices(n, k=1)
    dv = dm[iu, ju]
    keep = dv <= cap_val
    iu, ju, dv = iu[keep], ju[keep], dv[keep]
    # condensed order is lexicographic in (i, j); a stable value sort
    # therefore realizes the (value, lexicographic) filtration order
    order = np.argsort(dv, kind="stable")
    ei = iu[order].astype(np.int64)
    ej = ju[order].astype(np.int64)
    ev = dv[order]

    positive, neg = _h0_scan(ei, ej, n)

    h0_rows: list[tuple[float, float]] = []
    for death in ev[neg]:
        if death > 0.0:
            h0_rows.append((0.0, float(death)))
    for _ in range(n - neg.size):
        h0_rows.append((0.0, np.inf))

    births, deaths, ess = _h1_pairs(dm, cap_val, ei, ej, ev, np.flatnonzero(positive))
    h1_rows: list[tuple[float, float]] = [
        (float(b), float(d)) for b, d in zip(births, deaths) if d > b
    ]
    for r in ess:
        h1_rows.append((float(ev[r]), np.inf))

    return PersistenceDiagram(
        h0=_sorted_intervals(h0_rows),
        h1=_sorted_intervals(h1_rows),
        cap=cap_val,
    )


def diagram_norm(diag: PersistenceDiagram, dim: int, kind: str = "L2") -> float:
    """L1 (sum of lengths) or L2 (sqrt of sum of squared lengths) of finite intervals."""
    ivals = diag.intervals(dim)
    finite = ivals[np.isfinite(ivals[:, 1])]
    lengths = finite[:, 1] - finite[:, 0]
    if kind == "L1":
        return float(lengths.sum())
    if kind == "L2":
        return float(np.sqrt(np.square(lengths).sum()))
    raise ValueError(f"kind must be 'L1' or 'L2', got {kind!r}")


def dominant_intervals(diag: PersistenceDiagram, dim: int = 1, count: int = 3) -> NDArray[np.float64]:
    """The ``count`` largest finite interval lengths, descending, zero-padded."""
    if count < 1:
        raise ValueError("count must be >= 1")
    ivals = diag.intervals(dim)
    finite = ivals[np.isfinite(ivals[:, 1])]
    lengths = np.sort(finite[:, 1] - finite[:, 0])[::-1]
    out = np.zeros(count, dtype=np.float64)
    take = min(count, lengths.size)
    out[:take] = lengths[:take]
    return out


def diagram_to_csv(diag: PersistenceDiagram) -> str:
    """CSV text with header ``dim,birth,death``; infinite deaths as ``inf``."""
    lines = ["dim,birth,death"]
    for dim in (0, 1):
        for birth, death in diag.intervals(dim):
            d = "inf" if np.isinf(death) else repr(float(death))
            lines.append(f"{dim},{repr(float(birth))},{d}")
    return "\n".join(lines) + "\n"


def diagram_to_json_dict(diag: PersistenceDiagram) -> dict:
    def rows(arr: NDArray[np.float64]) -> list[list[float | None]]:
        return [
            [float(b), None if np.isinf(d) else float(d)] for b, d in arr
        ]

    return {
        "cap": float(diag.cap),
        "h0": rows(diag.h0),
        "h1": rows(diag.h1),
        "units": "filtration values in the series' value units",
    }


def write_diagram(diag: PersistenceDiagram, path: str | Path, fmt: str = "csv") -> None:
    path = Path(path)
    if fmt == "csv":
        path.write_text(diagram_to_csv(diag), encoding="utf-8", newline="\n")
    elif fmt == "json":
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            json.dump(diagram_to_json_dict(diag), fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        raise ValueError(f"unknown diagram format {fmt!r}")
