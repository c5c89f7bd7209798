"""Minimal SVG line plots for CLI outputs.

Figures are presentation-only: a single axes with one or two polylines.
The SVG backend is forced so no display is required, and date metadata is
stripped for stable output.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("svg")
matplotlib.rcParams["svg.hashsalt"] = "topoperiod"  # stable element ids

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np

__all__ = ["line_plot"]


def line_plot(
    path: str | Path,
    x: Sequence[float],
    y: Sequence[float],
    xlabel: str,
    ylabel: str,
    title: str = "",
    second: tuple[Sequence[float], Sequence[float], str] | None = None,
    label: str | None = None,
) -> None:
    """Write a single-axes SVG line plot; NaN gaps break the polyline."""
    fig, ax = plt.subplots(figsize=(8.0, 4.0))
    try:
        ax.plot(np.asarray(x, float), np.asarray(y, float), lw=1.2, label=label)
        if second is not None:
            x2, y2, lab2 = second
            ax.plot(np.asarray(x2, float), np.asarray(y2, float), lw=1.2, label=lab2)
        if label or second:
            ax.legend(loc="best", fontsize=8)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        fig.tight_layout()
        fig.savefig(str(path), format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
