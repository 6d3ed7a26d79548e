"""
Unsupervised Online Selection of features: reservoir, online engine and
selection timeline.
"""

from .reservoir import PREDICTED, TRAINING, Reservoir
from .engine import (
    SelectionLog,
    StandardModel,
    StepOutcome,
    UosState,
    classify_and_adapt,
    init,
)
from .timeline import DEFAULT_WINDOW, SelectionTimeline, selection_timeline

__all__ = [
    "PREDICTED",
    "TRAINING",
    "Reservoir",
    "SelectionLog",
    "StandardModel",
    "StepOutcome",
    "UosState",
    "classify_and_adapt",
    "init",
    "DEFAULT_WINDOW",
    "SelectionTimeline",
    "selection_timeline",
]
