"""
CSV reports of an experiment: per-run rates, box-plot statistics, per-sensor
selection rates, selection timelines and SR episode logs.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import pandas as pd

from src.types import RunResult
from src.uos import SelectionTimeline

log = logging.getLogger(__name__)

RATES_FILE = "rates.csv"
BOXPLOT_FILE = "boxplot.csv"
SELECTION_FILE = "selection_rates.csv"
EPISODE_COLUMNS = ["event", "sample_index", "sensor_id", "detail"]


def timeline_file(r: RunResult) -> str:
    return f"timeline_run{r.run_index}_seed{r.run_seed}.csv"


def episodes_file(r: RunResult) -> str:
    return f"episodes_run{r.run_index}_seed{r.run_seed}.csv"


def rates_frame(results: Sequence[RunResult], config_hash: str = "") -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "run_index": r.run_index,
                "run_seed": r.run_seed,
                "mode": r.mode,
                "classifier": r.classifier,
                "fault_type": r.fault_type,
                "rate": None if r.failed else r.rate,
                "failed": int(r.failed),
                "flags": ";".join(r.flags),
                "sr_durations": ";".join(str(d) for d in r.episodes.sr_durations()),
                "config_hash": config_hash,
            }
            for r in sorted(results, key=lambda r: r.run_index)
        ]
    )


def boxplot_frame(summaries: Iterable, config_hash: str = "", base_seed: int | None = None) -> pd.DataFrame:
    """One row per (mode, classifier, fault type) summary."""
    rows = [s.box_row() | {"config_hash": config_hash, "base_seed": base_seed} for s in summaries]
    return pd.DataFrame(rows)


def selection_frame(results: Sequence[RunResult]) -> pd.DataFrame:
    rows = [
        {"run_index": r.run_index, "run_seed": r.run_seed, "sensor_id": sid, "rate": rate}
        for r in sorted(results, key=lambda r: r.run_index)
        if not r.failed
        for sid, rate in r.selection_rates.items()
    ]
    return pd.DataFrame(rows, columns=["run_index", "run_seed", "sensor_id", "rate"])


def run_timeline(r: RunResult) -> SelectionTimeline:
    if r.selected is None or r.used is None or r.sensor_map is None:
        raise ValueError(f"Run {r.run_index} has no selection log")
    return SelectionTimeline(
        sample_index=np.arange(r.used.shape[0]),
        selected=r.selected,
        used=r.used,
        predicted=list(r.predicted),
        sensor_map=r.sensor_map,
    )


def timeline_frame(r: RunResult) -> pd.DataFrame:
    """sample_index, feature_0..feature_{p-1} (0/1), predicted, truth."""
    return run_timeline(r).to_frame(r.truth)


def episodes_frame(r: RunResult) -> pd.DataFrame:
    return pd.DataFrame(r.episodes.rows(), columns=EPISODE_COLUMNS)


def write_reports(
    out_dir: str | Path,
    results: Sequence[RunResult],
    summaries: Iterable,
    *,
    config_hash: str = "",
    base_seed: int | None = None,
    timeline_runs: Iterable[int] = (0,),
) -> list[Path]:
    """
    Write every CSV report under `out_dir`; returns the paths written.

    Timelines go out for the requested runs and for every flagged run; SR
    episode logs for every run that logged an event.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def save(df: pd.DataFrame, name: str) -> None:
        path = out / name
        df.to_csv(path, index=False)
        written.append(path)

    save(rates_frame(results, config_hash), RATES_FILE)
    save(boxplot_frame(summaries, config_hash, base_seed), BOXPLOT_FILE)
    save(selection_frame(results), SELECTION_FILE)

    wanted = set(timeline_runs)
    for r in sorted(results, key=lambda r: r.run_index):
        if r.failed:
            continue
        if r.run_index in wanted or r.flagged:
            save(timeline_frame(r), timeline_file(r))
        if r.episodes.events:
            save(episodes_frame(r), episodes_file(r))

    log.info(f"Wrote {len(written)} report files to {out}")
    return written
