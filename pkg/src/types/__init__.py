"""
Core types.
"""

from .data import Dataset, LabeledMatrix, SensorMap, Label
from .episodes import EpisodeLog, EpisodeEvent
from .events import (
    EventBody,
    Fault,
    Remove,
    BeginRepair,
    Ready,
    Merge,
)
from .results import RunResult
from . import errors

__all__ = [
    "Dataset",
    "LabeledMatrix",
    "SensorMap",
    "Label",
    "EpisodeLog",
    "EpisodeEvent",
    "EventBody",
    "Fault",
    "Remove",
    "BeginRepair",
    "Ready",
    "Merge",
    "RunResult",
    "errors",
]
