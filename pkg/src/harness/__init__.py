"""
Experiment harness: configs, fault injection, Monte Carlo runs and statistics.
"""

from .config import (
    MODES,
    DatasetSource,
    ExperimentConfig,
    ReportOptions,
    RunsConfig,
    UosOptions,
    apply_override,
    cast_scalar,
    config_hash,
    load_toml,
    merge_overrides,
)
from .faults import (
    PERMANENT,
    RANDOM_SENSOR,
    SEQUENTIAL_STARTS,
    SINGLE_START,
    TEMPORARY_DURATION,
    FaultedStream,
    FaultEvent,
    FaultPreset,
    inject,
    resolve_schedule,
    training_bounds,
)
from .stats import ALPHA, Comparison, SummaryStats, box_stats, compare_modes, summarize
from .run import ExperimentResult, choose_array, load_source, prepare_dataset, run_experiment, run_one
from .acceptance import (
    SelectionCheck,
    recovery_delays,
    repair_window_rates,
    resolved_schedule,
    selection_checks,
    sensor_selection,
    sr_durations,
)

__all__ = [
    "MODES",
    "DatasetSource",
    "ExperimentConfig",
    "ReportOptions",
    "RunsConfig",
    "UosOptions",
    "apply_override",
    "cast_scalar",
    "config_hash",
    "load_toml",
    "merge_overrides",
    "PERMANENT",
    "RANDOM_SENSOR",
    "SEQUENTIAL_STARTS",
    "SINGLE_START",
    "TEMPORARY_DURATION",
    "FaultedStream",
    "FaultEvent",
    "FaultPreset",
    "inject",
    "resolve_schedule",
    "training_bounds",
    "ALPHA",
    "Comparison",
    "SummaryStats",
    "box_stats",
    "compare_modes",
    "summarize",
    "ExperimentResult",
    "choose_array",
    "load_source",
    "prepare_dataset",
    "run_experiment",
    "run_one",
    "SelectionCheck",
    "recovery_delays",
    "repair_window_rates",
    "resolved_schedule",
    "selection_checks",
    "sensor_selection",
    "sr_durations",
]
