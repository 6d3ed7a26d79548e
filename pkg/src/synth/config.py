"""
Synthetic benchmark profile: 3 classes, 5 virtual sensors, common linear drift.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields
from typing import Any

import numpy as np

from src.types.errors import ConfigError

# Drift-free class centres: rows = classes 1..3, columns = sensors S1..S5.
# Each sensor singles out one class, reading lower for it than for the
# other two, which read alike: S1 -> class 3, S2 and S3 -> class 1,
# S4 and S5 -> class 2.
BASE_CENTERS: tuple[tuple[float, ...], ...] = (
    (16.0, 6.0, 14.0, 18.0, 22.0),
    (16.0, 16.0, 24.0, 8.0, 12.0),
    (10.0, 16.0, 24.0, 18.0, 22.0),
)

# Calibrated with nb/calibrate_synth.py: ~34 units of drift per sensor over
# 1200 samples puts the standard classifiers around 0.48.
DEFAULT_DRIFT_RATE = 0.0634


def _unit(n: int) -> tuple[float, ...]:
    return tuple([1.0 / math.sqrt(n)] * n)


@dataclass(frozen=True)
class SynthConfig:
    n_classes: int = 3
    n_sensors: int = 5
    train_per_class: int = 20
    n_test: int = 1200
    class_centers: tuple[tuple[float, ...], ...] = BASE_CENTERS
    drift_direction: tuple[float, ...] = field(default_factory=lambda: _unit(5))
    drift_rate: float = DEFAULT_DRIFT_RATE
    noise_std: float = 1.0
    # classes placed closer, 1-based
    overlap_pair: tuple[int, int] = (1, 2)
    # 1 keeps the pair as is; 0.9 pulls each centre 5% toward the other
    overlap_scale: float = 0.9
    replica_max_dev: float = 0.20
    seed: int = 0

    def __post_init__(self):
        centers = np.asarray(self.class_centers, dtype=float)
        if centers.shape != (self.n_classes, self.n_sensors):
            raise ConfigError(
                f"class_centers must be {self.n_classes}x{self.n_sensors}, got {centers.shape}"
            )
        direction = np.asarray(self.drift_direction, dtype=float)
        if direction.shape != (self.n_sensors,):
            raise ConfigError(f"drift_direction must have {self.n_sensors} entries")
        if not math.isclose(float(np.linalg.norm(direction)), 1.0, rel_tol=1e-6):
            raise ConfigError(f"drift_direction must have unit norm, got {np.linalg.norm(direction)}")
        if self.train_per_class < 2:
            raise ConfigError("train_per_class must be >= 2")
        if self.n_test < 0:
            raise ConfigError("n_test must be >= 0")
        if self.noise_std <= 0:
            raise ConfigError("noise_std must be positive")
        if not 0.0 <= self.replica_max_dev <= 0.5:
            raise ConfigError(f"replica_max_dev must be in [0, 0.5], got {self.replica_max_dev}")
        a, b = self.overlap_pair
        if a == b or not (1 <= a <= self.n_classes and 1 <= b <= self.n_classes):
            raise ConfigError(f"Bad overlap_pair {self.overlap_pair}")
        if not 0.0 < self.overlap_scale <= 1.0:
            raise ConfigError("overlap_scale must be in (0, 1]")

    @property
    def classes(self) -> list[int]:
        return list(range(1, self.n_classes + 1))

    @property
    def sensor_ids(self) -> list[str]:
        return [f"S{i + 1}" for i in range(self.n_sensors)]

    def centers(self) -> np.ndarray:
        """Class centres after bringing the overlap pair closer together."""
        c = np.asarray(self.class_centers, dtype=float).copy()
        a, b = (k - 1 for k in self.overlap_pair)
        mid = (c[a] + c[b]) / 2
        c[a] = mid + self.overlap_scale * (c[a] - mid)
        c[b] = mid + self.overlap_scale * (c[b] - mid)
        return c

    def drift(self, times: np.ndarray) -> np.ndarray:
        """[len(times), n_sensors] drift term, identical for every class."""
        t = np.asarray(times, dtype=float).reshape(-1, 1)
        return self.drift_rate * t * np.asarray(self.drift_direction)[None, :]

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["class_centers"] = [list(r) for r in self.class_centers]
        d["drift_direction"] = list(self.drift_direction)
        d["overlap_pair"] = list(self.overlap_pair)
        return d

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "SynthConfig":
        known = {f.name for f in fields(SynthConfig)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"Unknown synth keys: {sorted(unknown)}")
        kw = dict(d)
        if "class_centers" in kw:
            kw["class_centers"] = tuple(tuple(float(v) for v in r) for r in kw["class_centers"])
        if "drift_direction" in kw:
            kw["drift_direction"] = tuple(float(v) for v in kw["drift_direction"])
        elif "n_sensors" in kw:
            kw["drift_direction"] = _unit(int(kw["n_sensors"]))
        if "overlap_pair" in kw:
            kw["overlap_pair"] = tuple(int(v) for v in kw["overlap_pair"])
        return SynthConfig(**kw)
