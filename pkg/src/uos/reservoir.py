"""
Per-class FIFO template pool backing the UOS model.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.numerics.verdict import class_stats_matrix
from src.types.data import Label, LabeledMatrix

# Provenance tags of reservoir rows.
TRAINING = "training"
PREDICTED = "predicted"


@dataclass
class Reservoir:
    """
    Fixed slots, one template per slot.

    `columns` are the global feature indices of the columns of `X`. A slot
    keeps its class for life; replacing evicts the slot of the predicted class
    with the smallest insertion counter.
    """

    X: np.ndarray
    labels: np.ndarray
    columns: np.ndarray
    inserted: np.ndarray
    # stream index of the sample held in the slot (training rows: -1 - row)
    sample_index: np.ndarray
    provenance: list[str]
    classes: tuple[Label, ...]
    capacity: dict[Label, int]
    counter: int = 0

    @staticmethod
    def from_training(train: LabeledMatrix, columns: Sequence[int] | None = None) -> "Reservoir":
        order = np.arange(train.n_rows)
        cols = np.arange(train.n_features) if columns is None else np.asarray(columns, dtype=int)
        return Reservoir(
            X=train.X[:, cols].copy(),
            labels=train.labels.copy(),
            columns=cols.copy(),
            inserted=order.copy(),
            sample_index=-1 - order,
            provenance=[TRAINING] * train.n_rows,
            classes=train.classes,
            capacity=train.class_counts(),
            counter=train.n_rows,
        )

    @property
    def n_slots(self) -> int:
        return self.X.shape[0]

    def sizes(self) -> dict[Label, int]:
        return {c: int(np.sum(self.labels == c)) for c in self.classes}

    def positions(self, features: Sequence[int]) -> np.ndarray:
        """Column positions in X of the given global feature indices."""
        where = {int(f): i for i, f in enumerate(self.columns)}
        return np.array([where[int(f)] for f in features], dtype=int)

    def replace(self, label: Label, values: np.ndarray, sample_index: int) -> int:
        """Evict the oldest template of `label`, store `values` there; returns the slot."""
        slots = np.flatnonzero(self.labels == label)
        if slots.size == 0:
            raise KeyError(f"No reservoir slot for class {label!r}")
        slot = int(slots[np.argmin(self.inserted[slots])])
        self.X[slot] = values
        self.inserted[slot] = self.counter
        self.sample_index[slot] = sample_index
        self.provenance[slot] = PREDICTED
        self.counter += 1
        return slot

    def matrix(self, features: Sequence[int] | None = None) -> LabeledMatrix:
        """Templates as a LabeledMatrix, optionally restricted to global features."""
        X = self.X if features is None else self.X[:, self.positions(features)]
        return LabeledMatrix(X, self.labels, self.sample_index)

    def stats(self, features: Sequence[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per-class means, stds and counts on the given global features."""
        return class_stats_matrix(self.X[:, self.positions(features)], self.labels, self.classes)

    def drop_columns(self, features: Sequence[int]) -> None:
        keep = ~np.isin(self.columns, np.asarray(features, dtype=int))
        self.X = self.X[:, keep]
        self.columns = self.columns[keep]

    def add_columns(self, features: Sequence[int], values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float).reshape(self.n_slots, len(features))
        self.X = np.hstack([self.X, values])
        self.columns = np.concatenate([self.columns, np.asarray(features, dtype=int)])

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(self.X.tobytes())
        h.update(self.columns.tobytes())
        h.update(self.inserted.tobytes())
        h.update(repr(self.labels.tolist()).encode())
        return h.hexdigest()
