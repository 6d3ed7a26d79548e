"""
Selection timeline: which features each sample used, and the per-sensor
windowed selection rate derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from src.types.data import Label, SensorMap

DEFAULT_WINDOW = 30


@dataclass
class SelectionTimeline:
    sample_index: np.ndarray
    # [n_samples, n_features] verdict selections
    selected: np.ndarray
    # [n_samples, n_features] what the classifier was built on (fallback rows included)
    used: np.ndarray
    predicted: list[Label]
    sensor_map: SensorMap

    def sensor_selection(self) -> pd.DataFrame:
        """Per sample, the fraction of each sensor's features that were selected."""
        data = {
            sid: self.selected[:, list(feats)].mean(axis=1)
            for sid, feats in self.sensor_map.sensors.items()
        }
        return pd.DataFrame(data, index=pd.Index(self.sample_index, name="sample_index"))

    def sensor_rates(self, window: int = DEFAULT_WINDOW) -> pd.DataFrame:
        """Trailing-window mean of `sensor_selection`, one column per sensor."""
        if window < 1:
            raise ValueError(f"window must be positive, got {window}")
        return self.sensor_selection().rolling(window, min_periods=1).mean()

    def overall_rates(self) -> dict[str, float]:
        return {k: float(v) for k, v in self.sensor_selection().mean(axis=0).items()}

    def to_frame(self, truth: Optional[Sequence[Label]] = None) -> pd.DataFrame:
        """
        CSV layout: sample_index, feature_0..feature_{p-1} (0/1), predicted, truth.

        Feature columns hold the features used for the sample, so fallback
        samples show their full fallback set.
        """
        df = pd.DataFrame(
            self.used.astype(int),
            columns=[f"feature_{i}" for i in range(self.used.shape[1])],
        )
        df.insert(0, "sample_index", self.sample_index)
        df["predicted"] = list(self.predicted)
        df["truth"] = list(truth) if truth is not None else ""
        return df


def selection_timeline(state) -> SelectionTimeline:
    """Timeline of everything `state` (a UosState) has classified so far."""
    if len(state.log) == 0:
        raise ValueError("Selection timeline needs at least one classified sample")
    return SelectionTimeline(
        sample_index=np.asarray(state.log.sample_index, dtype=int),
        selected=state.log.selected_matrix(),
        used=state.log.used_matrix(),
        predicted=list(state.log.predicted),
        sensor_map=state.sensor_map,
    )
