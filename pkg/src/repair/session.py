"""
Self-repair of a failed sensor.

  collecting: the residual array keeps classifying; every prediction labels
              the replacement's readings of that sample (pseudo-label) and
              renews one reservoir slot.
  ready:      every reservoir slot renewed and each class pool holds at least
              `threshold` entries.
  merged:     the replacement's pool columns are joined to the reservoir by
              sample index and FDS pre-selection is re-run.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal, Mapping, Optional

import numpy as np

from src.types.data import Label
from src.types.errors import AlignmentGap, LastSensor, RepairInProgress
from src.uos.engine import UosState

log = logging.getLogger(__name__)

RepairStatus = Literal["collecting", "ready", "merged"]

# Provenance of every pool label: the residual-array prediction.
RESIDUAL_PREDICTION = "residual-prediction"


@dataclass(frozen=True)
class PoolEntry:
    values: np.ndarray
    label: Label
    sample_index: int
    provenance: str = RESIDUAL_PREDICTION


@dataclass
class RepairSession:
    removed_id: str
    replacement_id: str
    # per-class pool thresholds; None -> reservoir capacity
    threshold: Optional[dict[Label, int]] = None
    sr_pool: dict[Label, list[PoolEntry]] = field(default_factory=dict)
    renewed: set[int] = field(default_factory=set)
    status: RepairStatus = "collecting"
    samples_observed: int = 0

    def pool_counts(self) -> dict[Label, int]:
        return {c: len(v) for c, v in self.sr_pool.items()}

    def entries(self) -> list[PoolEntry]:
        return [e for pool in self.sr_pool.values() for e in pool]

    def mislabel_fraction(self, truth_by_index: Mapping[int, Label]) -> float:
        """Evaluation only: share of pool entries whose pseudo-label is wrong."""
        entries = self.entries()
        if not entries:
            return 0.0
        wrong = sum(truth_by_index[e.sample_index] != e.label for e in entries)
        return wrong / len(entries)


def active_repair(state: UosState) -> Optional[RepairSession]:
    return state.repair


def remove_sensor(state: UosState, sensor_id: str) -> UosState:
    """Drop every feature of `sensor_id` from the mask, the reservoir and the active view."""
    features = state.sensor_map.features(sensor_id)
    if sensor_id not in state.active_sensors:
        raise KeyError(f"Sensor {sensor_id!r} is not part of the active array {state.active_sensors}")
    if len(state.active_sensors) == 1:
        raise LastSensor(f"Removing {sensor_id!r} would leave the array empty")

    state.reservoir.drop_columns(features)
    state.preselected[list(features)] = False
    state.active_sensors = [s for s in state.active_sensors if s != sensor_id]
    log.info(f"Removed sensor {sensor_id} ({len(features)} features); active: {state.active_sensors}")
    return state


def begin_repair(state: UosState, session: RepairSession) -> None:
    current = active_repair(state)
    if current is not None and current.status != "merged":
        raise RepairInProgress(
            f"Repair of {current.removed_id!r} still {current.status}; "
            f"cannot start repairing {session.removed_id!r}"
        )
    if session.replacement_id in state.active_sensors:
        raise ValueError(f"Replacement {session.replacement_id!r} is already active")
    state.sensor_map.features(session.replacement_id)

    if session.threshold is None:
        session.threshold = dict(state.reservoir.capacity)
    session.sr_pool = {c: [] for c in state.reservoir.classes}
    session.renewed = set()
    session.status = "collecting"
    session.samples_observed = 0
    state.repair = session
    log.info(f"Repair started: {session.removed_id} -> {session.replacement_id}")


def observe(state: UosState, session: RepairSession, sample: np.ndarray, sample_index: int) -> Label:
    """Classify on the residual array and grow the replacement's pseudo-labeled pool."""
    if session.status != "collecting":
        raise RuntimeError(f"Session is {session.status}, not collecting")

    outcome = state.step(sample, sample_index)
    x = np.asarray(sample, dtype=float).reshape(-1)
    features = list(state.sensor_map.features(session.replacement_id))

    pool = session.sr_pool[outcome.predicted]
    pool.append(PoolEntry(x[features].copy(), outcome.predicted, sample_index))
    keep = max(state.reservoir.capacity[outcome.predicted], session.threshold[outcome.predicted])
    if len(pool) > keep:
        del pool[: len(pool) - keep]

    session.renewed.add(outcome.slot)
    session.samples_observed += 1

    full = len(session.renewed) == state.reservoir.n_slots
    counts = session.pool_counts()
    if full and all(counts[c] >= session.threshold[c] for c in state.reservoir.classes):
        session.status = "ready"
        log.info(
            f"Repair of {session.removed_id} ready after {session.samples_observed} samples, pool {counts}"
        )
    return outcome.predicted


def merge(state: UosState, session: RepairSession) -> UosState:
    if session.status != "ready":
        raise RuntimeError(f"Session is {session.status}, merge needs ready")

    by_index = {e.sample_index: e for e in session.entries()}
    rows = []
    for slot, idx in enumerate(state.reservoir.sample_index.tolist()):
        entry = by_index.get(idx)
        if entry is None:
            raise AlignmentGap(f"Reservoir slot {slot} (sample {idx}) has no SR pool entry")
        rows.append(entry.values)

    features = state.sensor_map.features(session.replacement_id)
    state.reservoir.add_columns(features, np.vstack(rows))
    state.active_sensors = state.active_sensors + [session.replacement_id]
    state.refresh_preselection()

    session.status = "merged"
    state.repair = None
    log.info(
        f"Merged {session.replacement_id}: {state.reservoir.columns.size} features, "
        f"{int(state.preselected.sum())} preselected"
    )
    return state
