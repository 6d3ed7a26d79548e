"""
The train/predict contract shared by the three core classifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Protocol

import numpy as np

from src.types.data import Label, LabeledMatrix
from src.types.errors import ConfigError, DimensionMismatch

ClassifierKind = Literal["knn", "lda", "plsda"]


@dataclass(frozen=True)
class ClassifierSpec:
    kind: ClassifierKind = "lda"
    # knn: neighbours voting (odd)
    k: int = 3
    # lda: ridge delta, relative to the mean covariance diagonal
    ridge: float = 1e-6
    # plsda: latent variables, None -> number of classes - 1
    latent_vars: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("knn", "lda", "plsda"):
            raise ConfigError(f"Unknown classifier kind {self.kind!r}")
        if self.k < 1 or self.k % 2 == 0:
            raise ConfigError(f"k must be a positive odd integer, got {self.k}")
        if self.ridge < 0:
            raise ConfigError(f"ridge must be >= 0, got {self.ridge}")
        if self.latent_vars is not None and self.latent_vars < 1:
            raise ConfigError(f"latent_vars must be positive, got {self.latent_vars}")

    def with_ridge(self, ridge: float) -> "ClassifierSpec":
        return ClassifierSpec(self.kind, self.k, ridge, self.latent_vars)

    def as_knn(self) -> "ClassifierSpec":
        return ClassifierSpec("knn", self.k, self.ridge, self.latent_vars)


class TrainedModel(Protocol):
    classes: tuple[Label, ...]
    n_features: int

    def predict_one(self, x: np.ndarray) -> Label: ...


def fit(spec: ClassifierSpec, data: LabeledMatrix) -> TrainedModel:
    """Deterministic given data and spec; the returned model is never mutated."""
    match spec.kind:
        case "knn":
            from .knn import fit_knn

            return fit_knn(data, spec.k)
        case "lda":
            from .lda import fit_lda

            return fit_lda(data, spec.ridge)
        case "plsda":
            from .plsda import fit_plsda

            return fit_plsda(data, spec.latent_vars)
        case _:
            raise ConfigError(f"Unknown classifier kind {spec.kind!r}")


def predict(model: TrainedModel, x: np.ndarray) -> Label:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != model.n_features:
        raise DimensionMismatch(
            f"Model expects {model.n_features} features, sample has {x.size}"
        )
    return model.predict_one(x)
