"""Command-line interface.

Subcommands: generate, embed, persist, period, compare, sweep-dim,
sweep-noise.  Input comes from exactly one source per run: a CSV column
(--input/--column) or a synthetic generator (--family and friends).
Parameters may also be supplied as a JSON config file; explicit flags win
over config values, which win over built-in defaults.

Exit codes: 0 success, 2 configuration error, 3 data error.  CSV/JSON
outputs are byte-identical across runs of the same configuration; periods
are reported in sample counts.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .baseline import rolling_baseline, summary_to_csv
from .embedding import swe
from .errors import DataError
from .persistence import rips_persistence, write_diagram
from .pipeline import (
    PeriodSeries,
    PipelineConfig,
    chop_and_search,
    dimension_sweep,
    noise_sweep,
    write_period_series,
)
from .series import FAMILIES, GeneratorSpec, TimeSeries, generate, load_csv

__all__ = ["RunConfig", "main", "execute"]

COMMANDS = ("generate", "embed", "persist", "period", "compare", "sweep-dim", "sweep-noise")

# formats each command can honor (figures are simple line plots only)
SUPPORTED_FORMATS = {
    "generate": ("csv", "json", "svg"),
    "embed": ("csv", "json"),
    "persist": ("csv", "json"),
    "period": ("csv", "json", "svg"),
    "compare": ("csv", "json", "svg"),
    "sweep-dim": ("csv", "json", "svg"),
    "sweep-noise": ("csv", "json", "svg"),
}

DEFAULTS = {
    "column": "-1",
    "step": 0.1,
    "domain_length": 100.0,
    "noise": 0.0,
    "seed": 0,
    "amplitude": 1.0,
    "frequency": 1.0,
    "trend_slope": 0.5,
    "segment_lengths": "250,375,375",
    "segment_frequencies": "1,3,0.5",
    "outdir": ".",
    "n": None,
    "dim": None,
    "d": 5,
    "cap": "auto",
    "window": 130,
    "stride": 5,
    "k": 4,
    "landmark_method": "maxmin",
    "landmark_seed": 0,
    "norm": "L2",
    "threshold": 0.05,
    "threshold_mode": "relative",
    "baseline_window": 40,
    "dims": "2,5,10,15,20,25,30",
    "levels": "0,1,2,3,4,5,6,7,8,9",
    "reps": 100,
    "formats": None,
}

DEFAULT_FORMATS = {
    "generate": "csv,json,svg",
    "embed": "csv,json",
    "persist": "csv,json",
    "period": "csv,json,svg",
    "compare": "csv,json,svg",
    "sweep-dim": "csv,json,svg",
    "sweep-noise": "csv,json,svg",
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation: one command, one input source, outputs."""

    command: str
    input: Path | None
    column: int | str
    gen: GeneratorSpec | None
    outdir: Path
    formats: tuple[str, ...]
    params: dict

    def __post_init__(self) -> None:
        if (self.input is None) == (self.gen is None):
            raise ValueError("exactly one input source required: --input or --family")


def _add_common(sub: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        sub.add_argument("--input", help="CSV file to read the series from")
        sub.add_argument("--column",
                         help="CSV column name or 0-based position, negative counts "
                              "from the end (default: last column)")
    sub.add_argument("--family", choices=FAMILIES, help="synthetic series family")
    sub.add_argument("--domain-length", dest="domain_length", type=float,
                     help="generator domain length in x units")
    sub.add_argument("--step", type=float, help="generator grid spacing")
    sub.add_argument("--noise", type=float, help="uniform noise bound N (added from [0, N])")
    sub.add_argument("--seed", type=int, help="noise RNG seed")
    sub.add_argument("--amplitude", type=float, help="oscillation amplitude")
    sub.add_argument("--frequency", type=float, help="sine family angular frequency")
    sub.add_argument("--trend-slope", dest="trend_slope", type=float,
                     help="sine-with-trend slope")
    sub.add_argument("--segment-lengths", dest="segment_lengths",
                     help="piecewise segment lengths in samples, e.g. 250,375,375")
    sub.add_argument("--segment-frequencies", dest="segment_frequencies",
                     help="piecewise segment angular frequencies, e.g. 1,3,0.5")
    sub.add_argument("--config", help="JSON file with parameter values (flags win)")
    sub.add_argument("--outdir", help="output directory (created if missing)")
    sub.add_argument("--formats", help="comma list from csv,json,svg")


def _add_embedding_params(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--n", type=int, help="embedding parameter n (vectors live in R^(n+1))")
    sub.add_argument("--dim", type=int, help="vector dimension n+1 (alternative to --n)")
    sub.add_argument("--d", type=int, help="embedding delay d")


def _add_pipeline_params(sub: argparse.ArgumentParser) -> None:
    _add_embedding_params(sub)
    sub.add_argument("--window", type=int, help="trailing window M in time steps")
    sub.add_argument("--stride", type=int, help="evaluation stride")
    sub.add_argument("--k", type=int, help="landmark count")
    sub.add_argument("--landmark-method", dest="landmark_method",
                     choices=("maxmin", "kmeans"), help="landmark selection method")
    sub.add_argument("--landmark-seed", dest="landmark_seed", type=int,
                     help="k-means seed")
    sub.add_argument("--norm", choices=("L1", "L2"), help="cyclicity norm kind")
    sub.add_argument("--threshold", type=float, help="cyclicity threshold")
    sub.add_argument("--threshold-mode", dest="threshold_mode",
                     choices=("relative", "absolute"),
                     help="interpret threshold relative to window diameter, or as-is")
    sub.add_argument("--cap", help="filtration cap: positive real or 'auto'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topoperiod",
        description="Detect and quantify (semi-)periodicity in univariate time series.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("generate", help="emit a synthetic series")
    _add_common(sub, with_input=False)

    sub = subs.add_parser("embed", help="sliding-window embed a series")
    _add_common(sub)
    _add_embedding_params(sub)

    sub = subs.add_parser("persist", help="Rips persistence diagram of the embedding")
    _add_common(sub)
    _add_embedding_params(sub)
    sub.add_argument("--cap", help="filtration cap: positive real or 'auto'")

    sub = subs.add_parser("period", help="rolling period estimates")
    _add_common(sub)
    _add_pipeline_params(sub)

    sub = subs.add_parser("compare", help="period estimates next to the spectral baseline")
    _add_common(sub)
    _add_pipeline_params(sub)
    sub.add_argument("--baseline-window", dest="baseline_window", type=int,
                     help="baseline rolling window in samples")

    sub = subs.add_parser("sweep-dim", help="dominant H1 lengths per embedding dimension")
    _add_common(sub)
    sub.add_argument("--dims", help="comma list of vector dimensions, e.g. 2,5,10")
    sub.add_argument("--d", type=int, help="embedding delay d")
    sub.add_argument("--cap", help="filtration cap: positive real or 'auto'")

    sub = subs.add_parser("sweep-noise", help="mean diagram norms per noise level")
    _add_common(sub, with_input=False)
    sub.add_argument("--levels", help="comma list of noise levels")
    sub.add_argument("--reps", type=int, help="repetitions per level")
    _add_embedding_params(sub)
    sub.add_argument("--cap", help="filtration cap: positive real or 'auto'")

    return parser


def _parse_float_list(text: str, field: str) -> list[float]:
    try:
        return [float(v) for v in str(text).split(",") if v != ""]
    except ValueError:
        raise ValueError(f"{field}: expected a comma list of numbers, got {text!r}") from None


def _parse_int_list(text: str, field: str) -> list[int]:
    out = []
    for v in str(text).split(","):
        if v == "":
            continue
        try:
            out.append(int(v))
        except ValueError:
            raise ValueError(f"{field}: expected a comma list of integers, got {text!r}") from None
    return out


def _parse_cap(value, field: str = "cap") -> float | str:
    if value is None or value == "auto":
        return "auto"
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValueError(f"{field}: expected a positive number or 'auto', got {value!r}") from None


def resolve_config(args: argparse.Namespace) -> RunConfig:
    command = args.command
    merged = dict(DEFAULTS)
    merged["formats"] = DEFAULT_FORMATS[command]

    config_path = getattr(args, "config", None)
    if config_path:
        path = Path(config_path)
        if not path.exists():
            # a bad --config is a usage problem, not a data problem
            raise ValueError(f"config: file not found: {path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValueError(f"config: invalid JSON in {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ValueError("config: top-level JSON value must be an object")
        for key, value in data.items():
            dest = key.replace("-", "_")
            if dest not in DEFAULTS and dest not in ("input", "family"):
                raise ValueError(f"config: unknown key {key!r}")
            merged[dest] = value

    for dest, value in vars(args).items():
        if dest in ("command", "config"):
            continue
        if value is not None:
            merged[dest] = value

    input_path = merged.get("input")
    family = merged.get("family")
    if command in ("generate", "sweep-noise"):
        if input_path is not None:
            raise ValueError(f"input: {command} only accepts a generator source")
        if family is None:
            raise ValueError(f"family: {command} requires --family")
    else:
        if (input_path is None) == (family is None):
            raise ValueError("exactly one input source required: --input or --family")

    gen = None
    if family is not None:
        gen = GeneratorSpec(
            family=family,
            domain_length=float(merged["domain_length"]),
            step=float(merged["step"]),
            noise_level=float(merged["noise"]),
            seed=int(merged["seed"]),
            amplitude=float(merged["amplitude"]),
            frequency=float(merged["frequency"]),
            trend_slope=float(merged["trend_slope"]),
            segment_frequencies=tuple(
                _parse_float_list(merged["segment_frequencies"], "segment-frequencies")
            ),
            segment_lengths=tuple(
                _parse_int_list(merged["segment_lengths"], "segment-lengths")
            ),
        )

    formats_text = merged["formats"]
    formats = tuple(v.strip() for v in str(formats_text).split(",") if v.strip())
    for fmt in formats:
        if fmt not in ("csv", "json", "svg"):
            raise ValueError(f"formats: unknown format {fmt!r}")
        if fmt not in SUPPORTED_FORMATS[command]:
            raise ValueError(f"formats: {fmt!r} is not supported by {command}")
    if not formats:
        raise ValueError("formats: at least one of csv,json,svg required")

    column: int | str = merged["column"]
    if isinstance(column, str) and column.lstrip("-").isdigit():
        column = int(column)

    params: dict = {}
    if command in ("embed", "persist", "period", "compare", "sweep-noise"):
        n = merged.get("n")
        dim = merged.get("dim")
        if n is not None and dim is not None and int(dim) != int(n) + 1:
            raise ValueError(f"dim: conflicts with n (dim must equal n+1, got {dim} vs {n})")
        if n is None:
            n = 2 if dim is None else int(dim) - 1
        n = int(n)
        if n < 1:
            raise ValueError("n: must be >= 1 (dim must be >= 2)")
        params["n"] = n
        params["d"] = int(merged["d"])
    if command in ("persist", "sweep-dim", "sweep-noise"):
        params["cap"] = _parse_cap(merged.get("cap"))
    if command in ("period", "compare"):
        params["pipeline"] = PipelineConfig(
            n=params["n"],
            d=params["d"],
            window=int(merged["window"]),
            stride=int(merged["stride"]),
            k=int(merged["k"]),
            landmark_method=str(merged["landmark_method"]),
            landmark_seed=int(merged["landmark_seed"]),
            norm_kind=str(merged["norm"]),
            threshold=float(merged["threshold"]),
            threshold_mode=str(merged["threshold_mode"]),
            cap=_parse_cap(merged.get("cap")),
        )
    if command == "compare":
        params["baseline_window"] = int(merged["baseline_window"])
    if command == "sweep-dim":
        params["dims"] = _parse_int_list(merged["dims"], "dims")
        params["d"] = int(merged["d"])
    if command == "sweep-noise":
        params["levels"] = _parse_float_list(merged["levels"], "levels")
        params["reps"] = int(merged["reps"])

    return RunConfig(
        command=command,
        input=Path(input_path) if input_path is not None else None,
        column=column,
        gen=gen,
        outdir=Path(merged["outdir"]),
        formats=formats,
        params=params,
    )


def _load_series(cfg: RunConfig) -> TimeSeries:
    if cfg.gen is not None:
        return generate(cfg.gen)
    if not cfg.input.exists():
        raise FileNotFoundError(f"input: file not found: {cfg.input}")
    return load_csv(cfg.input, cfg.column)


def _write_json(path: Path, payload: dict) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _period_columns(ps: PeriodSeries) -> tuple[np.ndarray, np.ndarray]:
    mean = np.array(
        [np.nan if e.is_none else e.mean_period for e in ps.estimates], dtype=np.float64
    )
    std = np.array(
        [np.nan if e.is_none else e.std_period for e in ps.estimates], dtype=np.float64
    )
    return mean, std


def _cmd_generate(cfg: RunConfig, out: list[Path]) -> None:
    ts = generate(cfg.gen)
    if "csv" in cfg.formats:
        path = cfg.outdir / "series.csv"
        lines = ["index,value"]
        lines += [f"{i},{repr(float(v))}" for i, v in enumerate(ts.values)]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
        out.append(path)
    if "json" in cfg.formats:
        path = cfg.outdir / "series.json"
        _write_json(path, {
            "label": ts.label,
            "step": ts.step,
            "units": "index in samples, value in series units",
            "values": [float(v) for v in ts.values],
        })
        out.append(path)
    if "svg" in cfg.formats:
        from .plotting import line_plot

        path = cfg.outdir / "series.svg"
        line_plot(path, np.arange(len(ts)), ts.values, "sample index", "value", ts.label)
        out.append(path)


def _cmd_embed(cfg: RunConfig, out: list[Path]) -> None:
    ts = _load_series(cfg)
    cloud = swe(ts, cfg.params["n"], cfg.params["d"])
    if "csv" in cfg.formats:
        path = cfg.outdir / "cloud.csv"
        header = "time_index," + ",".join(f"c{j}" for j in range(cloud.points.shape[1]))
        lines = [header]
        for t, row in zip(cloud.time_indices, cloud.points):
            lines.append(f"{int(t)}," + ",".join(repr(float(v)) for v in row))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
        out.append(path)
    if "json" in cfg.formats:
        path = cfg.outdir / "cloud.json"
        _write_json(path, {
            "n": cloud.n,
            "d": cloud.d,
            "units": "time_index in samples",
            "time_indices": [int(t) for t in cloud.time_indices],
            "points": [[float(v) for v in row] for row in cloud.points],
        })
        out.append(path)


def _cmd_persist(cfg: RunConfig, out: list[Path]) -> None:
    ts = _load_series(cfg)
    cloud = swe(ts, cfg.params["n"], cfg.params["d"])
    diag = rips_persistence(cloud.points, cap=cfg.params["cap"])
    if "csv" in cfg.formats:
        path = cfg.outdir / "diagram.csv"
        write_diagram(diag, path, fmt="csv")
        out.append(path)
    if "json" in cfg.formats:
        path = cfg.outdir / "diagram.json"
        write_diagram(diag, path, fmt="json")
        out.append(path)


def _cmd_period(cfg: RunConfig, out: list[Path]) -> None:
    ts = _load_series(cfg)
    ps = chop_and_search(ts, cfg.params["pipeline"])
    if "csv" in cfg.formats:
        path = cfg.outdir / "period.csv"
        write_period_series(ps, path, fmt="csv")
        out.append(path)
    if "json" in cfg.formats:
        path = cfg.outdir / "period.json"
        write_period_series(ps, path, fmt="json")
        out.append(path)
    if "svg" in cfg.formats:
        from .plotting import line_plot

        mean, _ = _period_columns(ps)
        path = cfg.outdir / "period.svg"
        line_plot(path, ps.indices, mean, "observation index", "period (samples)",
                  "rolling period estimate")
        out.append(path)


def _cmd_compare(cfg: RunConfig, out: list[Path]) -> None:
    ts = _load_series(cfg)
    ps = chop_and_search(ts, cfg.params["pipeline"])
    bwindow = cfg.params["baseline_window"]
    periods, summary = rolling_baseline(ts, bwindow)
    # baseline estimate ending at 1-based sample i belongs to 0-based index i-1
    base_index = np.arange(bwindow - 1, len(ts), dtype=np.int64)
    base_map = dict(zip(base_index.tolist(), periods.tolist()))
    tda_mean, tda_std = _period_columns(ps)
    tda_map = {
        int(i): (ps.scores[gi], tda_mean[gi], tda_std[gi])
        for gi, i in enumerate(ps.indices)
    }
    all_idx = sorted(set(base_map) | set(tda_map))
    if "csv" in cfg.formats:
        path = cfg.outdir / "compare.csv"
        lines = ["index,score,tda_period_mean,tda_period_std,baseline_period"]
        for i in all_idx:
            score = mean = std = ""
            if i in tda_map:
                s, m, v = tda_map[i]
                score = repr(float(s))
                mean = "" if np.isnan(m) else repr(float(m))
                std = "" if np.isnan(v) else repr(float(v))
            base = str(base_map[i]) if i in base_map else ""
            lines.append(f"{i},{score},{mean},{std},{base}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
        out.append(path)
    if "json" in cfg.formats:
        path = cfg.outdir / "compare.json"
        rows = []
        for i in all_idx:
            row: dict = {"index": i}
            if i in tda_map:
                s, m, v = tda_map[i]
                row["score"] = float(s)
                row["tda_period_mean"] = None if np.isnan(m) else float(m)
                row["tda_period_std"] = None if np.isnan(v) else float(v)
            if i in base_map:
                row["baseline_period"] = int(base_map[i])
            rows.append(row)
        _write_json(path, {"units": "periods in sample counts", "rows": rows})
        out.append(path)
    summary_path = cfg.outdir / "baseline_summary.csv"
    summary_path.write_text(summary_to_csv(summary), encoding="utf-8", newline="\n")
    out.append(summary_path)
    if "svg" in cfg.formats:
        from .plotting import line_plot

        path = cfg.outdir / "compare.svg"
        line_plot(
            path,
            ps.indices,
            tda_mean,
            "observation index",
            "period (samples)",
            "rolling period estimates",
            second=(base_index, periods.astype(float), "baseline"),
            label="topological",
        )
        out.append(path)


def _cmd_sweep_dim(cfg: RunConfig, out: list[Path]) -> None:
    ts = _load_series(cfg)
    rows = dimension_sweep(ts, cfg.params["dims"], cfg.params["d"], cap=cfg.params["cap"])
    if "csv" in cfg.formats:
        path = cfg.outdir / "sweep_dim.csv"
        lines = ["dim,len1,len2,len3"]
        for row in rows:
            if row["error"] is not None:
                lines.append(f"{row['dim']},,,")
            else:
                vals = ",".join(repr(float(v)) for v in row["intervals"])
                lines.append(f"{row['dim']},{vals}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
        out.append(path)
    if "json" in cfg.formats:
        path = cfg.outdir / "sweep_dim.json"
        _write_json(path, {
            "units": "interval lengths in series value units",
            "rows": [
                {
                    "dim": row["dim"],
                    "intervals": None if row["error"] else [float(v) for v in row["intervals"]],
                    "error": row["error"],
                }
                for row in rows
            ],
        })
        out.append(path)
    if "svg" in cfg.formats:
        from .plotting import line_plot

        ok = [row for row in rows if row["error"] is None]
        path = cfg.outdir / "sweep_dim.svg"
        line_plot(
            path,
            [row["dim"] for row in ok],
            [float(row["intervals"][0]) for row in ok],
            "embedding dimension",
            "interval length",
            "dominant H1 interval lengths",
            second=(
                [row["dim"] for row in ok],
                [float(row["intervals"][1]) for row in ok],
                "second",
            ),
            label="first",
        )
        out.append(path)


def _cmd_sweep_noise(cfg: RunConfig, out: list[Path]) -> None:
    rows = noise_sweep(
        cfg.gen,
        cfg.params["levels"],
        cfg.params["reps"],
        n=cfg.params["n"],
        d=cfg.params["d"],
        cap=cfg.params["cap"],
    )
    if "csv" in cfg.formats:
        path = cfg.outdir / "sweep_noise.csv"
        lines = ["level,l1_mean,l2_mean"]
        for row in rows:
            lines.append(f"{repr(row['level'])},{repr(row['l1_mean'])},{repr(row['l2_mean'])}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
        out.append(path)
    if "json" in cfg.formats:
        path = cfg.outdir / "sweep_noise.json"
        _write_json(path, {
            "units": "norms in series value units",
            "rows": [
                {
                    "level": row["level"],
                    "l1_mean": row["l1_mean"],
                    "l2_mean": row["l2_mean"],
                    "profile": [float(v) for v in row["profile"]],
                }
                for row in rows
            ],
        })
        out.append(path)
    if "svg" in cfg.formats:
        from .plotting import line_plot

        path = cfg.outdir / "sweep_noise.svg"
        line_plot(
            path,
            [row["level"] for row in rows],
            [row["l1_mean"] for row in rows],
            "noise level",
            "H1 diagram norm",
            "diagram norms by noise level",
            second=([row["level"] for row in rows], [row["l2_mean"] for row in rows], "L2"),
            label="L1",
        )
        out.append(path)


_HANDLERS = {
    "generate": _cmd_generate,
    "embed": _cmd_embed,
    "persist": _cmd_persist,
    "period": _cmd_period,
    "compare": _cmd_compare,
    "sweep-dim": _cmd_sweep_dim,
    "sweep-noise": _cmd_sweep_noise,
}


def execute(cfg: RunConfig) -> list[Path]:
    """Run one resolved command; returns the paths written."""
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    out: list[Path] = []
    _HANDLERS[cfg.command](cfg, out)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        written = execute(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DataError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
