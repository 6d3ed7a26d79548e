"""
PLS-DA: PLS regression of the one-hot class matrix, argmax of the response.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sklearn.cross_decomposition import PLSRegression

from src.types.data import Label, LabeledMatrix
from src.types.errors import RankDeficient


@dataclass(frozen=True)
class PlsdaModel:
    classes: tuple[Label, ...]
    n_features: int
    latent_vars: int
    # None when the data leaves nothing to regress (one class, no spread)
    pls: Optional[PLSRegression] = None
    constant: Optional[Label] = None

    def predict_one(self, x: np.ndarray) -> Label:
        if self.pls is None:
            return self.constant
        response = self.pls.predict(x.reshape(1, -1))
        return self.classes[int(np.argmax(response[0]))]


def fit_plsda(data: LabeledMatrix, latent_vars: Optional[int] = None) -> PlsdaModel:
    classes = data.classes
    counts = data.class_counts()
    majority = max(classes, key=lambda c: counts[c])

    if len(classes) == 1 or np.all(data.X.std(axis=0) <= 1e-12):
        return PlsdaModel(classes, data.n_features, 0, constant=majority)

    wanted = latent_vars if latent_vars is not None else len(classes) - 1
    # constant or collinear columns bring the rank below the matrix shape
    rank = int(np.linalg.matrix_rank(data.X - data.X.mean(axis=0)))
    if rank == 0:
        return PlsdaModel(classes, data.n_features, 0, constant=majority)
    limit = min(data.n_features, data.n_rows - 1, rank)
    if wanted > limit:
        warnings.warn(
            f"Requested {wanted} latent variables but at most {limit} can be "
            f"computed from {data.n_rows} rows, {data.n_features} features of rank {rank}; clipped.",
            RankDeficient,
        )
        wanted = limit

    Y = np.stack([data.labels == c for c in classes], axis=1).astype(float)
    pls = PLSRegression(n_components=wanted, scale=True)
    pls.fit(data.X, Y)
    return PlsdaModel(classes, data.n_features, wanted, pls=pls)
