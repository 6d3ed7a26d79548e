"""
Synthetic drifting dataset and replica units.

Sample of class c at time t:  centre[c] + drift_rate * t * direction + noise
Training samples sit at t = 0; test samples alternate 1, 2, 3, 1, 2, 3, ...
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from src.types.data import Dataset, LabeledMatrix, SensorMap
from src.types.errors import OrderingViolation

from .config import SynthConfig

log = logging.getLogger(__name__)

REPLICA_SUFFIX = "r"
MAX_REPLICA_TRIES = 20


@dataclass(frozen=True)
class SyntheticDataset:
    train: LabeledMatrix
    # index = time 1..n_test
    test: LabeledMatrix
    sensor_map: SensorMap
    config: SynthConfig

    def to_dataset(self) -> Dataset:
        return Dataset(
            self.train,
            self.test,
            self.sensor_map,
            {"source": "synthetic", "synth": self.config.to_dict()},
        )


def generate(config: SynthConfig = SynthConfig()) -> SyntheticDataset:
    rng = np.random.default_rng(config.seed)
    centers = config.centers()
    classes = np.array(config.classes)

    train_labels = np.repeat(classes, config.train_per_class)
    train_X = centers[train_labels - 1] + rng.normal(
        0.0, config.noise_std, size=(train_labels.size, config.n_sensors)
    )

    times = np.arange(1, config.n_test + 1)
    test_labels = np.resize(classes, config.n_test)
    test_X = (
        centers[test_labels - 1]
        + config.drift(times)
        + rng.normal(0.0, config.noise_std, size=(config.n_test, config.n_sensors))
    )

    log.debug(f"Generated synthetic set: train {train_X.shape}, test {test_X.shape}, seed {config.seed}")
    return SyntheticDataset(
        train=LabeledMatrix(train_X, train_labels),
        test=LabeledMatrix(test_X, test_labels, times),
        sensor_map=SensorMap.uniform(config.n_sensors, names=config.sensor_ids),
        config=config,
    )


@dataclass(frozen=True)
class Replica:
    """A second unit of one sensor: per-class gain on the drift-free response."""

    sensor_id: str
    column: int
    # one gain per class
    gains: np.ndarray
    config: SynthConfig

    @property
    def replica_id(self) -> str:
        return self.sensor_id + REPLICA_SUFFIX

    def centers(self) -> np.ndarray:
        return self.gains * self.config.centers()[:, self.column]

    def respond(self, labels: np.ndarray, times: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        labels = np.asarray(labels, dtype=int)
        base = self.centers()[labels - 1]
        drift = self.config.drift(times)[:, self.column]
        return base + drift + rng.normal(0.0, self.config.noise_std, size=labels.size)


def preserves_ordering(original: np.ndarray, replica: np.ndarray) -> bool:
    """Every strictly ordered class pair keeps its order (ties are free)."""
    for i in range(original.size):
        for j in range(original.size):
            if original[i] < original[j] and not replica[i] < replica[j]:
                return False
    return True


def make_replica(
    config: SynthConfig, sensor_id: str, seed: int, max_tries: int = MAX_REPLICA_TRIES
) -> Replica:
    """
    Gains drawn uniformly from [1 - dev, 1 + dev], one per distinct level of
    the sensor's drift-free response: classes the sensor cannot tell apart
    share a gain, so the replica singles out the same classes. Resampled
    while they would permute the sensor's class ordering.
    """
    column = config.sensor_ids.index(sensor_id)
    original = config.centers()[:, column]
    _, level = np.unique(np.asarray(config.class_centers, dtype=float)[:, column], return_inverse=True)
    rng = np.random.default_rng(seed)
    dev = config.replica_max_dev
    for attempt in range(max_tries):
        gains = rng.uniform(1.0 - dev, 1.0 + dev, size=level.max() + 1)[level]
        if preserves_ordering(original, gains * original):
            if attempt:
                log.debug(f"Replica of {sensor_id}: ordering kept after {attempt + 1} draws")
            return Replica(sensor_id, column, gains, config)
    raise OrderingViolation(
        f"Replica of {sensor_id} (centres {original.tolist()}, dev {dev}) "
        f"permuted the class ordering in {max_tries} draws"
    )


def with_replicas(dataset: SyntheticDataset, seed: int) -> SyntheticDataset:
    """
    Append one replica unit per sensor as extra stream columns.

    The map then holds S1..Sn followed by S1r..Snr, each replica sharing the
    model name of its original.
    """
    config = dataset.config
    rng = np.random.default_rng(seed)
    n = config.n_sensors
    train_times = np.zeros(dataset.train.n_rows)

    train_cols, test_cols = [], []
    for k, sid in enumerate(config.sensor_ids):
        replica = make_replica(config, sid, seed=int(rng.integers(2**32)) + k)
        train_cols.append(replica.respond(dataset.train.labels, train_times, rng))
        test_cols.append(replica.respond(dataset.test.labels, dataset.test.index, rng))

    names = config.sensor_ids + [s + REPLICA_SUFFIX for s in config.sensor_ids]
    smap = SensorMap.uniform(2 * n, names=names)
    models = {s: s for s in config.sensor_ids} | {s + REPLICA_SUFFIX: s for s in config.sensor_ids}
    return SyntheticDataset(
        train=LabeledMatrix(
            np.hstack([dataset.train.X, np.column_stack(train_cols)]),
            dataset.train.labels,
            dataset.train.index,
        ),
        test=LabeledMatrix(
            np.hstack([dataset.test.X, np.column_stack(test_cols)]),
            dataset.test.labels,
            dataset.test.index,
        ),
        sensor_map=SensorMap(smap.sensors, models),
        config=config,
    )
