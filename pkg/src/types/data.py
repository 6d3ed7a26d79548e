"""
Data containers: labeled matrices and the sensor-to-feature map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

Label = Hashable


@dataclass(frozen=True)
class LabeledMatrix:
    """
    X-block (rows = samples, columns = features) with its Y-block.

    `index` is the chronological position of every row (time index for
    synthetic test data, record order for ingested data).
    """

    X: np.ndarray
    labels: np.ndarray
    index: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        if X.ndim != 2:
            raise ValueError(f"X must be 2-D, got shape {X.shape}")
        if X.shape[1] < 1:
            raise ValueError("X must have at least one column")
        if not np.all(np.isfinite(X)):
            raise ValueError("X contains missing or non-finite values")
        labels = np.asarray(self.labels)
        if labels.shape != (X.shape[0],):
            raise ValueError(
                f"Expected {X.shape[0]} labels, got shape {labels.shape}"
            )
        index = (
            np.arange(X.shape[0])
            if self.index is None
            else np.asarray(self.index, dtype=int)
        )
        if index.shape != (X.shape[0],):
            raise ValueError(f"Expected {X.shape[0]} index values, got {index.shape}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", index)

    @property
    def n_rows(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    @property
    def classes(self) -> tuple[Label, ...]:
        """Distinct labels in canonical (sorted) order."""
        return tuple(sorted(set(self.labels.tolist())))

    def class_counts(self) -> dict[Label, int]:
        return {c: int(np.sum(self.labels == c)) for c in self.classes}

    def columns(self, features: Sequence[int]) -> "LabeledMatrix":
        return LabeledMatrix(self.X[:, list(features)], self.labels, self.index)

    def rows(self, start: int, stop: int) -> "LabeledMatrix":
        return LabeledMatrix(
            self.X[start:stop], self.labels[start:stop], self.index[start:stop]
        )


@dataclass(frozen=True)
class SensorMap:
    """
    Ordered mapping sensor id -> feature indices.

    Every feature belongs to exactly one sensor. `models` optionally names
    the sensor type (e.g. "TGS2602") so replicas of the same kind can be found.
    """

    sensors: dict[str, tuple[int, ...]]
    models: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        seen: dict[int, str] = {}
        for sid, feats in self.sensors.items():
            if not feats:
                raise ValueError(f"Sensor {sid} owns no features")
            for f in feats:
                if f in seen:
                    raise ValueError(
                        f"Feature {f} belongs to both {seen[f]} and {sid}"
                    )
                seen[f] = sid
        object.__setattr__(
            self, "sensors", {k: tuple(int(f) for f in v) for k, v in self.sensors.items()}
        )

    @staticmethod
    def uniform(
        n_sensors: int,
        features_per_sensor: int = 1,
        names: Iterable[str] | None = None,
    ) -> "SensorMap":
        """Consecutive blocks of `features_per_sensor` features per sensor."""
        ids = list(names) if names is not None else [f"S{i + 1}" for i in range(n_sensors)]
        if len(ids) != n_sensors:
            raise ValueError(f"Expected {n_sensors} sensor names, got {len(ids)}")
        return SensorMap(
            {
                sid: tuple(range(i * features_per_sensor, (i + 1) * features_per_sensor))
                for i, sid in enumerate(ids)
            }
        )

    @property
    def ids(self) -> list[str]:
        return list(self.sensors)

    @property
    def n_features(self) -> int:
        return sum(len(f) for f in self.sensors.values())

    def features(self, sensor_id: str) -> tuple[int, ...]:
        try:
            return self.sensors[sensor_id]
        except KeyError:
            raise KeyError(f"Unknown sensor {sensor_id!r}; known: {self.ids}") from None

    def sensor_of(self, feature: int) -> str:
        for sid, feats in self.sensors.items():
            if feature in feats:
                return sid
        raise KeyError(f"Feature {feature} belongs to no sensor")

    def same_model(self, sensor_id: str) -> list[str]:
        """Other sensors of the same model as `sensor_id`."""
        model = self.models.get(sensor_id)
        if model is None:
            return []
        return [s for s, m in self.models.items() if m == model and s != sensor_id]

    def to_dict(self) -> dict:
        return {
            "sensors": {k: list(v) for k, v in self.sensors.items()},
            "models": dict(self.models),
        }

    @staticmethod
    def from_dict(d: dict) -> "SensorMap":
        return SensorMap(
            {k: tuple(v) for k, v in d["sensors"].items()},
            dict(d.get("models", {})),
        )


@dataclass(frozen=True)
class Dataset:
    """A train/test split over one sensor array, plus free-form provenance."""

    train: LabeledMatrix
    test: LabeledMatrix
    sensor_map: SensorMap
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.train.n_features != self.test.n_features:
            raise ValueError(
                f"Train has {self.train.n_features} features, test has {self.test.n_features}"
            )
        if self.sensor_map.n_features != self.train.n_features:
            raise ValueError(
                f"Sensor map covers {self.sensor_map.n_features} features, data has {self.train.n_features}"
            )
