"""
Synthetic drifting sensor-array benchmark.
"""

from .config import BASE_CENTERS, DEFAULT_DRIFT_RATE, SynthConfig
from .generate import (
    MAX_REPLICA_TRIES,
    REPLICA_SUFFIX,
    Replica,
    SyntheticDataset,
    generate,
    make_replica,
    preserves_ordering,
    with_replicas,
)

__all__ = [
    "BASE_CENTERS",
    "DEFAULT_DRIFT_RATE",
    "SynthConfig",
    "MAX_REPLICA_TRIES",
    "REPLICA_SUFFIX",
    "Replica",
    "SyntheticDataset",
    "generate",
    "make_replica",
    "preserves_ordering",
    "with_replicas",
]
