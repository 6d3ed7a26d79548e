"""
Per-run checks on the selection timeline: how fast a faulted sensor stops
being selected, how its replacement compares once merged, and how soon a
sensor comes back after a temporary fault.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from src.types import BeginRepair, Merge, Ready, RunResult

from .faults import FaultEvent

DECAY_LEVEL = 0.05


def sensor_selection(result: RunResult, sensor_id: str) -> np.ndarray:
    """Per sample, the fraction of the sensor's features selected by the verdicts."""
    if result.selected is None or result.sensor_map is None:
        raise ValueError(f"Run {result.run_index} carries no selection log")
    return result.selected[:, list(result.sensor_map.features(sensor_id))].mean(axis=1)


def windowed(series: np.ndarray, window: int) -> np.ndarray:
    return pd.Series(series).rolling(window, min_periods=1).mean().to_numpy()


@dataclass
class SelectionCheck:
    sensor_id: str
    fault_start: int
    # samples after the fault start until the windowed rate drops below 0.05
    decay: Optional[int]
    replacement_id: Optional[str] = None
    merged_at: Optional[int] = None
    pre_fault_rate: Optional[float] = None
    replacement_rate: Optional[float] = None

    @property
    def ratio(self) -> Optional[float]:
        if not self.pre_fault_rate or self.replacement_rate is None:
            return None
        return self.replacement_rate / self.pre_fault_rate

    def decays_within(self, samples: int) -> bool:
        return self.decay is not None and self.decay < samples

    def comparable(self, factor: float = 2.0) -> bool:
        r = self.ratio
        return r is not None and 1.0 / factor <= r <= factor


def selection_checks(result: RunResult, window: int = 30) -> list[SelectionCheck]:
    """One check per permanent fault of the run."""
    merges = {e.body.sensor_id: e.sample_index for e in result.episodes.of_type(Merge)}
    checks = []
    for f in result.resolved_faults:
        if f["duration"] != "permanent":
            continue
        sid, start = f["sensor"], int(f["start"])
        rate = windowed(sensor_selection(result, sid), window)
        below = np.flatnonzero(rate[start:] < DECAY_LEVEL)
        check = SelectionCheck(sid, start, int(below[0]) if below.size else None)

        replacement = result.replicas.get(sid)
        if replacement is not None and replacement in merges:
            merged = merges[replacement]
            after = sensor_selection(result, replacement)[merged + 1 :]
            before = sensor_selection(result, sid)[:start]
            check.replacement_id = replacement
            check.merged_at = merged
            check.pre_fault_rate = float(before.mean()) if before.size else None
            check.replacement_rate = float(after.mean()) if after.size else None
        checks.append(check)
    return checks


def repair_window_rates(result: RunResult) -> list[float]:
    """
    Classification rate of the residual array over each completed repair,
    begin_repair to ready inclusive. Pairs with `result.pool_mislabel`.
    """
    starts = [e.sample_index for e in result.episodes.of_type(BeginRepair)]
    ends = [e.sample_index for e in result.episodes.of_type(Ready)]
    truth = np.asarray(result.truth)
    predicted = np.asarray(result.predicted)
    return [float(np.mean(predicted[a : b + 1] == truth[a : b + 1])) for a, b in zip(starts, ends)]


def sr_durations(result: RunResult) -> list[int]:
    """Samples from begin_repair to ready, per completed repair."""
    return result.episodes.sr_durations()


def resolved_schedule(result: RunResult) -> list[FaultEvent]:
    return [FaultEvent.from_dict(f) for f in result.resolved_faults]


def recovery_delays(
    result: RunResult, schedule: Optional[Sequence[FaultEvent]] = None
) -> list[Optional[int]]:
    """
    For every temporary fault, samples after its end until any feature of the
    sensor is verdict-selected again (0: right on the first clean sample);
    None when it never comes back before the stream ends.
    """
    out: list[Optional[int]] = []
    for e in resolved_schedule(result) if schedule is None else schedule:
        if e.permanent:
            continue
        sel = sensor_selection(result, e.sensor)
        end = e.stop(sel.size)
        back = np.flatnonzero(sel[end:] > 0)
        out.append(int(back[0]) if back.size else None)
    return out
