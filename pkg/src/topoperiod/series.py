"""Time-series container, CSV ingestion, synthetic generators, noise injection.

All generators are deterministic given their spec, including the seed of the
noise stream.  Noise is one-sided: a draw from ``Uniform[0, level]`` is added
to every clean sample.  The noise RNG is NumPy's ``default_rng`` (PCG64), so
generated series are reproducible across platforms and NumPy versions.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from .errors import CsvParseError

__all__ = [
    "TimeSeries",
    "GeneratorSpec",
    "FAMILIES",
    "load_csv",
    "generate",
    "add_noise",
]

FAMILIES = (
    "sine",
    "composite-sine",
    "sine-with-trend",
    "piecewise-period",
    "flipped-sine",
)


@dataclass(frozen=True, slots=True)
class TimeSeries:
    """Uniformly sampled real-valued series.

    Parameters
    ----------
    values : ndarray
        Samples f_0..f_k; finite, non-empty.
    step : float
        Grid spacing between consecutive samples, > 0.
    label : str
        Free-form description carried through outputs.
    """

    values: NDArray[np.float64]
    step: float = 1.0
    label: str = ""

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("values must be a non-empty 1-d array")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must contain only finite entries")
        if not (np.isfinite(self.step) and self.step > 0):
            raise ValueError("step must be strictly positive")

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def x(self) -> NDArray[np.float64]:
        """Grid locations x_i = i * step."""
        return np.arange(self.values.size, dtype=np.float64) * self.step


@dataclass(frozen=True, slots=True)
class GeneratorSpec:
    """Recipe for a synthetic series.

    ``domain_length`` is measured in x units; the sample count is
    ``round(domain_length / step) + 1`` with ``x_i = i * step`` starting at 0.
    The piecewise-period family ignores ``domain_length`` and instead emits
    ``sum(segment_lengths)`` samples.

    Family parameters (``amplitude`` scales the oscillatory part of every
    family; the trend term is left unscaled):

    - ``sine``: ``amplitude * sin(frequency * x)``.
    - ``composite-sine``: ``amplitude * (sin(2x) + sin(x/2))``.
    - ``sine-with-trend``: ``amplitude * sin(2x) + trend_slope * x``.
    - ``piecewise-period``: sine segments with angular frequencies
      ``segment_frequencies`` lasting ``segment_lengths`` samples each;
      phase accumulates across junctions so values are continuous.
    - ``flipped-sine``: half-wave humps of ``|sin|`` with the sign pattern
      + - | + + - | + + + - | ...  (block b holds b positive humps then one
      negative), cyclic in embedding but not periodic in time.
    """

    family: str = "sine"
    domain_length: float = 100.0
    step: float = 0.1
    noise_level: float = 0.0
    seed: int = 0
    amplitude: float = 1.0
    frequency: float = 1.0
    trend_slope: float = 0.5
    segment_frequencies: tuple[float, ...] = (1.0, 3.0, 0.5)
    segment_lengths: tuple[int, ...] = (250, 375, 375)

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(
                f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}"
            )
        if not (np.isfinite(self.step) and self.step > 0):
            raise ValueError("step must be strictly positive")
        if self.domain_length < self.step:
            raise ValueError("domain_length must be at least one step")
        if not (np.isfinite(self.noise_level) and self.noise_level >= 0):
            raise ValueError("noise_level must be >= 0")
        if not (np.isfinite(self.amplitude) and self.amplitude > 0):
            raise ValueError("amplitude must be > 0")
        if self.family == "piecewise-period":
            if len(self.segment_frequencies) != len(self.segment_lengths):
                raise ValueError("segment_frequencies and segment_lengths must align")
            if any(m < 1 for m in self.segment_lengths):
                raise ValueError("segment_lengths must be positive")


def _flipped_sign(hump: int) -> float:
    # Block b (1-based) contributes b positive humps then one negative.
    b = 1
    h = hump
    while h >= b + 1:
        h -= b + 1
        b += 1
    return -1.0 if h == b else 1.0


def _clean_values(spec: GeneratorSpec) -> NDArray[np.float64]:
    a = spec.amplitude
    if spec.family == "piecewise-period":
        total = int(sum(spec.segment_lengths))
        omega = np.repeat(
            np.asarray(spec.segment_frequencies, dtype=np.float64),
            np.asarray(spec.segment_lengths, dtype=np.int64),
        )
        # Phase accumulation: theta_0 = 0, theta_i = theta_{i-1} + omega_i * step.
        theta = np.empty(total, dtype=np.float64)
        theta[0] = 0.0
        np.cumsum(omega[1:] * spec.step, out=theta[1:])
        return a * np.sin(theta)

    count = int(round(spec.domain_length / spec.step)) + 1
    x = np.arange(count, dtype=np.float64) * spec.step
    if spec.family == "sine":
        return a * np.sin(spec.frequency * x)
    if spec.family == "composite-sine":
        return a * (np.sin(2.0 * x) + np.sin(0.5 * x))
    if spec.family == "sine-with-trend":
        return a * np.sin(2.0 * x) + spec.trend_slope * x
    # flipped-sine
    humps = np.floor(x / math.pi).astype(np.int64)
    signs = np.array([_flipped_sign(int(h)) for h in np.unique(humps)])
    return a * signs[np.searchsorted(np.unique(humps), humps)] * np.abs(np.sin(x))


def generate(spec: GeneratorSpec) -> TimeSeries:
    """Produce the series described by ``spec``; pure in the spec (seed included)."""
    clean = _clean_values(spec)
    if spec.noise_level > 0:
        rng = np.random.default_rng(spec.seed)
        clean = clean + rng.uniform(0.0, spec.noise_level, clean.size)
    label = spec.family if spec.noise_level == 0 else f"{spec.family}+noise[0,{spec.noise_level:g}]"
    return TimeSeries(values=clean, step=spec.step, label=label)


def add_noise(ts: TimeSeries, level: float, seed: int) -> TimeSeries:
    """Return a copy of ``ts`` with Uniform[0, level] added to every sample."""
    if not (np.isfinite(level) and level >= 0):
        raise ValueError("noise level must be >= 0")
    if level == 0:
        return ts
    rng = np.random.default_rng(seed)
    return TimeSeries(
        values=ts.values + rng.uniform(0.0, level, ts.values.size),
        step=ts.step,
        label=f"{ts.label}+noise[0,{level:g}]" if ts.label else f"noise[0,{level:g}]",
    )


def load_csv(path: str | Path, column: str | int = 0) -> TimeSeries:
    """Read one numeric column from a CSV file.

    ``column`` selects by 0-based position or by header name; negative
    positions count from the end of the row.  A header row is consumed when
    the column is named, or when the first row's selected cell is not
    numeric.  Real datasets carry no grid metadata, so ``step`` defaults
    to 1.0.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [(i + 1, row) for i, row in enumerate(csv.reader(fh)) if row]
    if not rows:
        raise CsvParseError(str(path), 1, "file contains no data")

    start = 0
    if isinstance(column, str):
        header = [cell.strip() for cell in rows[0][1]]
        if column not in header:
            raise CsvParseError(str(path), 1, f"column {column!r} not found in header")
        idx = header.index(column)
        start = 1
    else:
        idx = int(column)
        first_row, first = rows[0]
        if idx >= len(first) or idx < -len(first):
            raise CsvParseError(str(path), first_row, f"row has no column {idx}")
        try:
            float(first[idx])
        except ValueError:
            start = 1  # treat as header

    values: list[float] = []
    for rownum, row in rows[start:]:
        if idx >= len(row) or idx < -len(row):
            raise CsvParseError(str(path), rownum, f"row has no column {idx}")
        cell = row[idx].strip()
        try:
            values.append(float(cell))
        except ValueError:
            raise CsvParseError(
                str(path), rownum, f"non-numeric cell {cell!r} in column {idx}"
            ) from None
    if not values:
        raise CsvParseError(str(path), rows[-1][0], "selected column is empty")
    arr = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise CsvParseError(str(path), rows[start + bad][0], "non-finite value")
    return TimeSeries(values=arr, step=1.0, label=path.name)
