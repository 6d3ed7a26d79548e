"""
Linear discriminant analysis with a pooled, ridge-regularized covariance
and equal class priors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from src.types.data import Label, LabeledMatrix
from src.types.errors import SingularCovariance


@dataclass(frozen=True)
class LdaModel:
    classes: tuple[Label, ...]
    # [n_features, n_classes]
    weights: np.ndarray
    # [n_classes]
    bias: np.ndarray

    @property
    def n_features(self) -> int:
        return self.weights.shape[0]

    def scores(self, x: np.ndarray) -> np.ndarray:
        return x @ self.weights + self.bias

    def predict_one(self, x: np.ndarray) -> Label:
        return self.classes[int(np.argmax(self.scores(x)))]


def pooled_covariance(data: LabeledMatrix) -> np.ndarray:
    """Within-class scatter summed over classes, divided by the row count."""
    p = data.n_features
    scatter = np.zeros((p, p))
    for c in data.classes:
        Xc = data.X[data.labels == c]
        centered = Xc - Xc.mean(axis=0)
        scatter += centered.T @ centered
    return scatter / data.n_rows


def fit_lda(data: LabeledMatrix, ridge: float = 1e-6) -> LdaModel:
    classes = data.classes
    means = np.stack([data.X[data.labels == c].mean(axis=0) for c in classes])

    if len(classes) == 1:
        return LdaModel(classes, np.zeros((data.n_features, 1)), np.zeros(1))

    cov = pooled_covariance(data)
    p = cov.shape[0]
    cov = cov + ridge * np.trace(cov) / p * np.eye(p)
    try:
        factor = cho_factor(cov)
    except LinAlgError as e:
        raise SingularCovariance(
            f"Pooled covariance ({p}x{p}, ridge {ridge}) is not positive definite: {e}"
        ) from e

    # g_k(x) = x' S^-1 mu_k - mu_k' S^-1 mu_k / 2
    weights = cho_solve(factor, means.T)
    bias = -0.5 * np.einsum("kp,pk->k", means, weights)
    return LdaModel(classes, weights, bias)
