"""
k nearest neighbours with a canonical neighbour order.

Neighbours are ranked by Euclidean distance, then by the feature vector
(lexicographically), then by class. The ranking does not depend on the row
order of the training data, so neither does the prediction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.types.data import Label, LabeledMatrix


@dataclass(frozen=True)
class KnnModel:
    X: np.ndarray
    codes: np.ndarray
    classes: tuple[Label, ...]
    k: int

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    def neighbour_order(self, x: np.ndarray) -> np.ndarray:
        dist = np.sqrt(((self.X - x) ** 2).sum(axis=1))
        # np.lexsort: last key is the primary one.
        keys = [self.codes] + [self.X[:, j] for j in reversed(range(self.X.shape[1]))] + [dist]
        return np.lexsort(keys)

    def predict_one(self, x: np.ndarray) -> Label:
        order = self.neighbour_order(x)
        nearest = self.codes[order[: self.k]]
        votes = np.bincount(nearest, minlength=len(self.classes))
        tied = np.flatnonzero(votes == votes.max())
        if tied.size == 1:
            return self.classes[int(tied[0])]
        # Tie: the tied class owning the nearest neighbour.
        for code in nearest:
            if code in tied:
                return self.classes[int(code)]
        raise AssertionError("unreachable: a tied class always has a neighbour")


def fit_knn(data: LabeledMatrix, k: int = 3) -> KnnModel:
    classes = data.classes
    lookup = {c: i for i, c in enumerate(classes)}
    codes = np.array([lookup[c] for c in data.labels.tolist()], dtype=int)
    return KnnModel(
        X=data.X.copy(),
        codes=codes,
        classes=classes,
        k=min(k, data.n_rows),
    )
