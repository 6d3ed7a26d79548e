"""
Fisher Discriminant Score and the training-time feature pre-selection.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.types.data import Label
from src.types.errors import DegenerateVariance

log = logging.getLogger(__name__)

# Spread below this (in feature units) counts as no spread at all.
EPS = 1e-12

# "at least one FDS ratio higher than 1"
FDS_THRESHOLD = 1.0


def pairwise_fds(values_a: Sequence[float], values_b: Sequence[float]) -> float:
    """
    FDS = SB / SW for one feature and one pair of classes.

      SB = (mu_a - mu)^2 + (mu_b - mu)^2, mu the mean of both classes together
      SW = var(a) + var(b), population variances (1/L weighting)

    Two constant classes with equal means score 0; with different means
    DegenerateVariance is raised (`means_differ=True`) and the caller decides
    what infinite separation means to it.
    """
    a = np.asarray(values_a, dtype=float)
    b = np.asarray(values_b, dtype=float)
    if a.size < 2 or b.size < 2:
        raise ValueError(f"Each class needs >= 2 values, got {a.size} and {b.size}")

    mu_a = a.mean()
    mu_b = b.mean()
    mu = np.concatenate([a, b]).mean()

    sb = (mu_a - mu) ** 2 + (mu_b - mu) ** 2
    sw = a.var() + b.var()

    if sw < EPS:
        if abs(mu_a - mu_b) <= EPS:
            return 0.0
        raise DegenerateVariance(
            f"Both classes are constant ({mu_a} vs {mu_b})", means_differ=True
        )
    return float(sb / sw)


def fds_or_limit(values_a: Sequence[float], values_b: Sequence[float]) -> float:
    """pairwise_fds, with constant-but-different classes mapped to +inf."""
    try:
        return pairwise_fds(values_a, values_b)
    except DegenerateVariance as e:
        return float("inf") if e.means_differ else 0.0


@dataclass(frozen=True)
class FdsTable:
    """FDS for every feature and every unordered class pair."""

    classes: tuple[Label, ...]
    pairs: tuple[tuple[Label, Label], ...]
    # [n_features, n_pairs]
    scores: np.ndarray

    def get(self, feature: int, a: Label, b: Label) -> float:
        key = (a, b) if (a, b) in self.pairs else (b, a)
        return float(self.scores[feature, self.pairs.index(key)])

    def best(self) -> np.ndarray:
        """Max over class pairs, per feature."""
        if not self.pairs:
            return np.zeros(self.scores.shape[0])
        return self.scores.max(axis=1)


def fds_table(X: np.ndarray, labels: np.ndarray) -> FdsTable:
    X = np.asarray(X, dtype=float)
    labels = np.asarray(labels)
    classes = tuple(sorted(set(labels.tolist())))
    pairs = tuple(itertools.combinations(classes, 2))
    scores = np.zeros((X.shape[1], len(pairs)))
    for j, (a, b) in enumerate(pairs):
        Xa = X[labels == a]
        Xb = X[labels == b]
        for i in range(X.shape[1]):
            scores[i, j] = fds_or_limit(Xa[:, i], Xb[:, i])
    return FdsTable(classes=classes, pairs=pairs, scores=scores)


def preselect_features(X: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """
    Boolean mask of features with at least one pairwise FDS > 1.

    An all-false mask is a legal answer; callers decide whether that is fatal.
    """
    classes = set(np.asarray(labels).tolist())
    if len(classes) < 2:
        raise ValueError(f"Pre-selection needs >= 2 classes, got {len(classes)}")
    table = fds_table(X, labels)
    mask = table.best() > FDS_THRESHOLD
    log.debug(f"FDS pre-selection kept {int(mask.sum())}/{mask.size} features")
    return mask
