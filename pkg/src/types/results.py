from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .data import SensorMap
from .episodes import EpisodeLog


@dataclass
class RunResult:
    """Everything one Monte Carlo run produced."""

    run_index: int
    run_seed: int
    mode: str
    classifier: str
    fault_type: str
    predicted: list = field(default_factory=list)
    truth: list = field(default_factory=list)
    # [n_test, n_features]: features chosen by the per-sample verdicts
    selected: Optional[np.ndarray] = None
    # [n_test, n_features]: features the classifier actually used (fallback included)
    used: Optional[np.ndarray] = None
    sensor_map: Optional[SensorMap] = None
    episodes: EpisodeLog = field(default_factory=EpisodeLog)
    resolved_faults: list[dict] = field(default_factory=list)
    replicas: dict[str, str] = field(default_factory=dict)
    # Mislabel fraction of each SR pool at merge time (evaluation only).
    pool_mislabel: list[float] = field(default_factory=list)
    # overall verdict-selection rate of every sensor that was ever active
    selection_rates: dict[str, float] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)
    failed: bool = False
    error: Optional[str] = None

    @property
    def rate(self) -> float:
        """Correct / total over the whole test stream, faults and repairs included."""
        if not self.truth:
            return float("nan")
        hits = sum(p == t for p, t in zip(self.predicted, self.truth))
        return hits / len(self.truth)

    @property
    def flagged(self) -> bool:
        return bool(self.flags)

    def selection_digest(self) -> str:
        if self.selected is None:
            return ""
        return hashlib.sha256(np.packbits(self.selected).tobytes()).hexdigest()

    def to_record(self) -> dict[str, Any]:
        """JSON-friendly record, enough to check a replay bit-for-bit."""
        return {
            "run_index": self.run_index,
            "run_seed": self.run_seed,
            "mode": self.mode,
            "classifier": self.classifier,
            "fault_type": self.fault_type,
            "rate": None if self.failed else self.rate,
            "predicted": [_plain(p) for p in self.predicted],
            "selection_digest": self.selection_digest(),
            "episodes": self.episodes.rows(),
            "resolved_faults": self.resolved_faults,
            "replicas": self.replicas,
            "pool_mislabel": self.pool_mislabel,
            "selection_rates": self.selection_rates,
            "flags": self.flags,
            "failed": self.failed,
            "error": self.error,
        }


def _plain(value: Any) -> Any:
    """numpy scalars -> builtins so json can take them."""
    return value.item() if isinstance(value, np.generic) else value
