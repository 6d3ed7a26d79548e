"""
Run records (JSONL) and CSV reports.
"""

from .jsonl import normalized, read_runs, record_of, runs_from_jsonl, runs_to_jsonl, write_runs
from .reports import (
    BOXPLOT_FILE,
    EPISODE_COLUMNS,
    RATES_FILE,
    SELECTION_FILE,
    boxplot_frame,
    episodes_file,
    episodes_frame,
    rates_frame,
    run_timeline,
    selection_frame,
    timeline_file,
    timeline_frame,
    write_reports,
)

__all__ = [
    "normalized",
    "read_runs",
    "record_of",
    "runs_from_jsonl",
    "runs_to_jsonl",
    "write_runs",
    "BOXPLOT_FILE",
    "EPISODE_COLUMNS",
    "RATES_FILE",
    "SELECTION_FILE",
    "boxplot_frame",
    "episodes_file",
    "episodes_frame",
    "rates_frame",
    "run_timeline",
    "selection_frame",
    "timeline_file",
    "timeline_frame",
    "write_reports",
]
