"""Topological period detection for noisy univariate time series.

Pipeline: sliding-window embedding -> Vietoris-Rips persistence in
dimension 1 -> cyclicity score -> landmark symbolic dynamics -> period
estimate, plus a spectral baseline for comparison.  Periods are reported
in sample counts.
"""
from .baseline import (
    BaselineSummary,
    find_frequency,
    rolling_baseline,
    summary_to_csv,
    summary_to_json_dict,
    write_summary,
)
from .embedding import PointCloud, swe
from .errors import CsvParseError, DataError, SeriesTooShortError
from .landmarks import (
    Landmarks,
    SymbolicSequence,
    assign_symbols,
    select_landmarks,
    symbols_to_csv,
    write_symbols_csv,
)
from .period import (
    NO_PERIOD,
    PeriodEstimate,
    dominant_jumps,
    estimate_period,
    jumps,
)
from .persistence import (
    PersistenceDiagram,
    diagram_norm,
    diagram_to_csv,
    diagram_to_json_dict,
    dominant_intervals,
    enclosing_radius,
    rips_persistence,
    write_diagram,
)
from .pipeline import (
    PeriodSeries,
    PipelineConfig,
    chop_and_search,
    cyclicity_score,
    dimension_sweep,
    noise_sweep,
    period_series_to_csv,
    period_series_to_json_dict,
    write_period_series,
)
from .series import (
    FAMILIES,
    GeneratorSpec,
    TimeSeries,
    add_noise,
    generate,
    load_csv,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BaselineSummary",
    "CsvParseError",
    "DataError",
    "FAMILIES",
    "GeneratorSpec",
    "Landmarks",
    "NO_PERIOD",
    "PeriodEstimate",
    "PeriodSeries",
    "PersistenceDiagram",
    "PipelineConfig",
    "PointCloud",
    "SeriesTooShortError",
    "SymbolicSequence",
    "TimeSeries",
    "add_noise",
    "assign_symbols",
    "chop_and_search",
    "cyclicity_score",
    "diagram_norm",
    "diagram_to_csv",
    "diagram_to_json_dict",
    "dimension_sweep",
    "dominant_intervals",
    "dominant_jumps",
    "enclosing_radius",
    "estimate_period",
    "find_frequency",
    "generate",
    "jumps",
    "load_csv",
    "noise_sweep",
    "period_series_to_csv",
    "period_series_to_json_dict",
    "rips_persistence",
    "rolling_baseline",
    "select_landmarks",
    "summary_to_csv",
    "summary_to_json_dict",
    "swe",
    "symbols_to_csv",
    "write_diagram",
    "write_period_series",
    "write_summary",
    "write_symbols_csv",
]
