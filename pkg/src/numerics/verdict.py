"""
Three-criteria, per-sample feature selection.

A feature is kept for the current sample only when the sample can be
assigned on that feature to a single class, unambiguously:

  prob_class1 > thresh1
  prob_class1 / prob_class2 > thresh2
  Mahal_class1 * Mahal_class1 / Mahal_class2 < thresh3

and the most probable class is also the nearest one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import erfc

from src.types.data import Label

from .fisher import EPS
from .membership import ClassStats, MembershipModel, mahal_1d, membership_probability

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class SelectionThresholds:
    thresh1: float = 0.005
    thresh2: float = 5.0
    thresh3: float = 0.1
    membership: MembershipModel = "tail"

    def __post_init__(self):
        if self.membership == "tail" and not 0.0 < self.thresh1 < 1.0:
            raise ValueError(f"thresh1 must be a probability in (0, 1), got {self.thresh1}")
        if self.thresh1 <= 0.0:
            raise ValueError(f"thresh1 must be positive, got {self.thresh1}")
        if self.thresh2 <= 1.0:
            raise ValueError(f"thresh2 must be > 1, got {self.thresh2}")
        if self.thresh3 <= 0.0:
            raise ValueError(f"thresh3 must be > 0, got {self.thresh3}")
        if self.membership not in ("tail", "density"):
            raise ValueError(f"Unknown membership model {self.membership!r}")


@dataclass(frozen=True)
class FeatureVerdict:
    feature_index: int
    selected: bool
    winning_class: Optional[Label] = None


def _top_two(values: list[float], largest: bool) -> tuple[int, float, float]:
    """Index of the best value (first on ties), the best, and the runner-up."""
    best = max(range(len(values)), key=lambda i: values[i]) if largest else min(
        range(len(values)), key=lambda i: values[i]
    )
    rest = [v for i, v in enumerate(values) if i != best]
    return best, values[best], (max(rest) if largest else min(rest))


def feature_verdict(
    x: float,
    per_class_stats: Sequence[ClassStats],
    thresholds: SelectionThresholds = SelectionThresholds(),
    feature_index: int = 0,
) -> FeatureVerdict:
    # Classes without spread on this feature sit out.
    stats = [s for s in per_class_stats if s.std > EPS]
    if len(stats) < 2:
        return FeatureVerdict(feature_index, False)

    probs = [membership_probability(x, s, thresholds.membership) for s in stats]
    dists = [mahal_1d(x, s) for s in stats]

    i1, p1, p2 = _top_two(probs, largest=True)
    j1, m1, m2 = _top_two(dists, largest=False)

    prob_ratio = p1 / p2 if p2 > 0 else math.inf
    mahal_ratio = m1 * m1 / m2 if m2 > 0 else math.inf

    selected = (
        p1 > thresholds.thresh1
        and prob_ratio > thresholds.thresh2
        and mahal_ratio < thresholds.thresh3
        and i1 == j1
    )
    return FeatureVerdict(
        feature_index, bool(selected), stats[i1].class_id if selected else None
    )


def class_stats_matrix(
    X: np.ndarray, labels: np.ndarray, classes: Sequence[Label]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-class means, population stds and counts: three [n_classes, n_features] arrays."""
    X = np.asarray(X, dtype=float)
    means = np.empty((len(classes), X.shape[1]))
    stds = np.empty_like(means)
    counts = np.empty(len(classes), dtype=int)
    for k, c in enumerate(classes):
        rows = X[labels == c]
        counts[k] = rows.shape[0]
        means[k] = rows.mean(axis=0)
        stds[k] = rows.std(axis=0)
    return means, stds, counts


def sample_verdicts(
    x: np.ndarray,
    means: np.ndarray,
    stds: np.ndarray,
    thresholds: SelectionThresholds = SelectionThresholds(),
) -> tuple[np.ndarray, np.ndarray]:
    """
    feature_verdict for every feature of one sample at once.

    Returns (selected [n_features] bool, winner [n_features] class position or -1).
    Decisions are identical to calling feature_verdict feature by feature.
    """
    x = np.asarray(x, dtype=float)
    valid = stds > EPS
    safe_std = np.where(valid, stds, 1.0)
    d = (x[None, :] - means) / safe_std
    z = np.abs(d)

    if thresholds.membership == "tail":
        probs = erfc(z / _SQRT2)
    else:
        probs = np.exp(-0.5 * z * z) / (safe_std * _SQRT2PI)
    dists = d**2

    probs = np.where(valid, probs, -np.inf)
    dists = np.where(valid, dists, np.inf)

    cols = np.arange(x.size)
    i1 = np.argmax(probs, axis=0)
    p1 = probs[i1, cols]
    masked = probs.copy()
    masked[i1, cols] = -np.inf
    p2 = masked.max(axis=0)

    j1 = np.argmin(dists, axis=0)
    m1 = dists[j1, cols]
    masked = dists.copy()
    masked[j1, cols] = np.inf
    m2 = masked.min(axis=0)

    with np.errstate(divide="ignore", invalid="ignore"):
        prob_ratio = np.where(p2 > 0, p1 / np.where(p2 > 0, p2, 1.0), np.inf)
        mahal_ratio = np.where(m2 > 0, m1 * m1 / np.where(m2 > 0, m2, 1.0), np.inf)

    selected = (
        (valid.sum(axis=0) >= 2)
        & (p1 > thresholds.thresh1)
        & (prob_ratio > thresholds.thresh2)
        & (mahal_ratio < thresholds.thresh3)
        & (i1 == j1)
    )
    winner = np.where(selected, i1, -1)
    return selected, winner
