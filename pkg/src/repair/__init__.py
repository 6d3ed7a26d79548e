"""
Self-repair: replace a failed sensor while the residual array keeps classifying.
"""

from .session import (
    RESIDUAL_PREDICTION,
    PoolEntry,
    RepairSession,
    RepairStatus,
    active_repair,
    begin_repair,
    merge,
    observe,
    remove_sensor,
)

__all__ = [
    "RESIDUAL_PREDICTION",
    "PoolEntry",
    "RepairSession",
    "RepairStatus",
    "active_repair",
    "begin_repair",
    "merge",
    "observe",
    "remove_sensor",
]
