"""
Fault schedules and their injection into a test stream.

A zero fault reads 0 on every feature of the sensor; a random fault draws
each feature uniformly from its training-set [min, max] on every sample.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Any, Literal, Optional, Sequence

import numpy as np

from src.types.data import LabeledMatrix, SensorMap
from src.types.errors import ConfigError, ScheduleOutOfRange

log = logging.getLogger(__name__)

FaultType = Literal["zero", "random"]
FaultAction = Literal["none", "replace"]

RANDOM_SENSOR = "random"
PERMANENT = "permanent"

# Preset schedules.
SEQUENTIAL_STARTS = (200, 400, 600, 800)
SINGLE_START = 10
TEMPORARY_DURATION = 15


@dataclass(frozen=True)
class FaultEvent:
    # test-relative index of the first faulted sample
    start: int
    # None: permanent
    duration: Optional[int] = None
    sensor: str = RANDOM_SENSOR
    fault_type: FaultType = "zero"
    # what the oracle asks for once a permanent fault is detected
    action: FaultAction = "replace"

    def __post_init__(self):
        if self.start < 0:
            raise ScheduleOutOfRange(f"Fault start {self.start} is negative")
        if self.duration is not None and self.duration < 1:
            raise ConfigError(f"Fault duration must be positive, got {self.duration}")
        if self.fault_type not in ("zero", "random"):
            raise ConfigError(f"Unknown fault type {self.fault_type!r}")
        if self.action not in ("none", "replace"):
            raise ConfigError(f"Unknown fault action {self.action!r}")

    @property
    def permanent(self) -> bool:
        return self.duration is None

    @property
    def resolved(self) -> bool:
        return self.sensor != RANDOM_SENSOR

    def stop(self, n_samples: int) -> int:
        """One past the last faulted sample."""
        return n_samples if self.permanent else min(n_samples, self.start + self.duration)

    def to_dict(self) -> dict[str, Any]:
        return {
            "start": self.start,
            "duration": PERMANENT if self.permanent else self.duration,
            "sensor": self.sensor,
            "type": self.fault_type,
            "action": self.action,
        }

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "FaultEvent":
        unknown = set(d) - {"start", "duration", "sensor", "type", "action"}
        if unknown:
            raise ConfigError(f"Unknown fault keys: {sorted(unknown)}")
        if "start" not in d:
            raise ConfigError("Fault needs a start index")
        duration = d.get("duration", PERMANENT)
        return FaultEvent(
            start=int(d["start"]),
            duration=None if duration in (PERMANENT, None) else int(duration),
            sensor=str(d.get("sensor", RANDOM_SENSOR)),
            fault_type=d.get("type", "zero"),
            action=d.get("action", "replace"),
        )


@dataclass(frozen=True)
class FaultPreset:
    """
    Named schedules:
      sequential: faults at 200, 400, 600, 800 on four distinct random sensors
      single:     one fault at 10 on a random sensor
    """

    name: Literal["sequential", "single"] = "sequential"
    type: FaultType = "zero"
    # "permanent" or a positive sample count
    duration: int | str = PERMANENT
    action: FaultAction = "replace"

    def __post_init__(self):
        if self.name not in ("sequential", "single"):
            raise ConfigError(f"Unknown fault preset {self.name!r}")
        if self.duration != PERMANENT and not isinstance(self.duration, int):
            raise ConfigError(f"Preset duration must be an integer or {PERMANENT!r}")

    def events(self) -> list[FaultEvent]:
        starts = SEQUENTIAL_STARTS if self.name == "sequential" else (SINGLE_START,)
        duration = None if self.duration == PERMANENT else int(self.duration)
        return [FaultEvent(s, duration, RANDOM_SENSOR, self.type, self.action) for s in starts]


def resolve_schedule(
    schedule: Sequence[FaultEvent], candidates: Sequence[str], rng: np.random.Generator
) -> list[FaultEvent]:
    """
    Give every "random" event a concrete sensor: distinct sensors drawn from
    `candidates`, never one the schedule already names.
    """
    named = {e.sensor for e in schedule if e.resolved}
    for sid in named:
        if sid not in candidates:
            raise ConfigError(f"Fault on unknown sensor {sid!r}; array: {list(candidates)}")
    pool = [s for s in candidates if s not in named]
    n_random = sum(not e.resolved for e in schedule)
    if n_random > len(pool):
        raise ConfigError(f"{n_random} random faults but only {len(pool)} sensors to pick from")
    drawn = iter(pool[i] for i in rng.permutation(len(pool))[:n_random])
    return [e if e.resolved else replace(e, sensor=next(drawn)) for e in schedule]


def training_bounds(train: LabeledMatrix) -> tuple[np.ndarray, np.ndarray]:
    return train.X.min(axis=0), train.X.max(axis=0)


@dataclass
class FaultedStream:
    X: np.ndarray
    # [n_samples, n_features]: True where a fault overwrote the value
    mask: np.ndarray


def inject(
    X: np.ndarray,
    schedule: Sequence[FaultEvent],
    rng: np.random.Generator,
    sensor_map: SensorMap,
    bounds: Optional[tuple[np.ndarray, np.ndarray]] = None,
) -> FaultedStream:
    """
    Faulted copy of the stream. Temporary faults end at start + duration and
    the original readings resume; permanent faults last to the end of the
    stream (the replacement unit's columns are never touched).
    """
    out = np.array(X, dtype=float, copy=True)
    n = out.shape[0]
    mask = np.zeros(out.shape, dtype=bool)
    for e in schedule:
        if not e.resolved:
            raise ConfigError(f"Fault at {e.start} has no sensor; resolve the schedule first")
        if e.start >= n:
            raise ScheduleOutOfRange(f"Fault at {e.start} on {e.sensor} is past the stream end ({n})")
        cols = list(sensor_map.features(e.sensor))
        rows = slice(e.start, e.stop(n))
        match e.fault_type:
            case "zero":
                out[rows, cols] = 0.0
            case "random":
                if bounds is None:
                    raise ConfigError("Random faults need the training min/max")
                lo, hi = bounds[0][cols], bounds[1][cols]
                out[rows, cols] = rng.uniform(lo, hi, size=(e.stop(n) - e.start, len(cols)))
        mask[rows, cols] = True
        log.debug(f"Injected {e.fault_type} fault on {e.sensor} over samples {e.start}..{e.stop(n) - 1}")
    return FaultedStream(out, mask)
