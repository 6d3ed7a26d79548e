"""
Univariate class statistics: normal membership probability and Mahalanobis distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from scipy.special import erfc

from src.types.data import Label
from src.types.errors import DegenerateVariance

from .fisher import EPS

MembershipModel = Literal["tail", "density"]

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class ClassStats:
    """Mean and population std of one class on one feature."""

    class_id: Label
    mean: float
    std: float
    count: int

    def __post_init__(self):
        if self.std < 0:
            raise ValueError(f"std must be >= 0, got {self.std}")
        if self.count < 1:
            raise ValueError(f"count must be positive, got {self.count}")

    @staticmethod
    def from_values(class_id: Label, values: Sequence[float]) -> "ClassStats":
        v = np.asarray(values, dtype=float)
        return ClassStats(class_id, float(v.mean()), float(v.std()), int(v.size))


def _check(stats: ClassStats) -> None:
    if stats.std <= EPS:
        raise DegenerateVariance(
            f"Class {stats.class_id!r} has std {stats.std} <= {EPS}"
        )


def membership_probability(
    x: float, stats: ClassStats, model: MembershipModel = "tail"
) -> float:
    """
    "tail": P(|Z| >= |x - mean| / std), the chance of a value at least as extreme.
    "density": the normal pdf of the class fit evaluated at x.
    """
    _check(stats)
    z = abs((x - stats.mean) / stats.std)
    if model == "tail":
        return float(erfc(z / _SQRT2))
    if model == "density":
        return float(np.exp(-0.5 * z * z) / (stats.std * _SQRT2PI))
    raise ValueError(f"Unknown membership model {model!r}")


def mahal_1d(x: float, stats: ClassStats) -> float:
    """Squared standardized distance ((x - mean) / std)^2."""
    _check(stats)
    return float(((x - stats.mean) / stats.std) ** 2)
