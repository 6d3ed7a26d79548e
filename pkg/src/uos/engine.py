"""
The UOS online loop: select features -> rebuild the classifier on the
reservoir -> predict -> put the pseudo-labeled sample into the reservoir.
"""

from __future__ import annotations

import hashlib
import logging
import warnings
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from src.classifiers import ClassifierSpec, TrainedModel, fit, predict
from src.numerics import FeatureVerdict, SelectionThresholds, preselect_features, sample_verdicts
from src.types.data import Label, LabeledMatrix, SensorMap
from src.types.errors import DimensionMismatch, EmptyPreselection, RankDeficient, SingularCovariance

from .reservoir import Reservoir

log = logging.getLogger(__name__)

SINGULAR_RETRY_FACTOR = 10.0


@dataclass
class StepOutcome:
    sample_index: int
    predicted: Label
    slot: int
    # global masks over the full stream width
    selected: np.ndarray
    used: np.ndarray
    # class position per feature, -1 where not selected
    winners: np.ndarray
    fallback: bool = False


@dataclass
class SelectionLog:
    """Exactly one record per classified sample."""

    n_features: int
    sample_index: list[int] = field(default_factory=list)
    predicted: list[Label] = field(default_factory=list)
    selected: list[np.ndarray] = field(default_factory=list)
    used: list[np.ndarray] = field(default_factory=list)
    winners: list[np.ndarray] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.predicted)

    def add(self, outcome: StepOutcome) -> None:
        self.sample_index.append(outcome.sample_index)
        self.predicted.append(outcome.predicted)
        self.selected.append(outcome.selected)
        self.used.append(outcome.used)
        self.winners.append(outcome.winners)

    def verdicts(self, t: int, classes: tuple[Label, ...]) -> list[FeatureVerdict]:
        """FeatureVerdicts of the t-th classified sample, one per feature."""
        return [
            FeatureVerdict(i, bool(sel), classes[w] if sel else None)
            for i, (sel, w) in enumerate(zip(self.selected[t], self.winners[t]))
        ]

    def selected_matrix(self) -> np.ndarray:
        return np.array(self.selected, dtype=bool).reshape(-1, self.n_features)

    def used_matrix(self) -> np.ndarray:
        return np.array(self.used, dtype=bool).reshape(-1, self.n_features)


@dataclass
class UosState:
    reservoir: Reservoir
    # global mask over the full stream width
    preselected: np.ndarray
    spec: ClassifierSpec
    thresholds: SelectionThresholds
    sensor_map: SensorMap
    active_sensors: list[str]
    log: SelectionLog
    # the RepairSession in progress, if any
    repair: Optional[Any] = None
    rank_reported: bool = False

    @property
    def n_features(self) -> int:
        """Width of the incoming samples."""
        return self.preselected.size

    @property
    def active_columns(self) -> np.ndarray:
        return self.reservoir.columns

    def refresh_preselection(self) -> np.ndarray:
        """Re-run FDS pre-selection over the whole current reservoir."""
        mask = preselect_features(self.reservoir.X, self.reservoir.labels)
        if not mask.any():
            raise EmptyPreselection(
                f"No feature among {self.reservoir.columns.size} passes FDS > 1"
            )
        self.preselected = np.zeros(self.n_features, dtype=bool)
        self.preselected[self.reservoir.columns[mask]] = True
        return self.preselected

    def step(self, sample: np.ndarray, sample_index: int) -> StepOutcome:
        x = np.asarray(sample, dtype=float).reshape(-1)
        if x.size != self.n_features:
            raise DimensionMismatch(f"Expected {self.n_features} features, sample has {x.size}")

        cols = self.reservoir.columns
        candidates = cols[self.preselected[cols]]

        selected = np.zeros(self.n_features, dtype=bool)
        winners = np.full(self.n_features, -1, dtype=int)
        if candidates.size:
            means, stds, _ = self.reservoir.stats(candidates)
            sel, win = sample_verdicts(x[candidates], means, stds, self.thresholds)
            selected[candidates[sel]] = True
            winners[candidates] = win

        chosen = np.flatnonzero(selected)
        fallback = chosen.size == 0
        if fallback:
            chosen = candidates if candidates.size else cols
            log.debug(f"Sample {sample_index}: empty selection, falling back to {chosen.size} features")

        used = np.zeros(self.n_features, dtype=bool)
        used[chosen] = True

        model = self._fit(self.reservoir.matrix(chosen))
        predicted = predict(model, x[chosen])
        slot = self.reservoir.replace(predicted, x[cols], sample_index)

        outcome = StepOutcome(sample_index, predicted, slot, selected, used, winners, fallback)
        self.log.add(outcome)
        return outcome

    def _fit(self, data: LabeledMatrix) -> TrainedModel:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", RankDeficient)
            model = self._fit_or_fall_back(data)
        for w in caught:
            if not issubclass(w.category, RankDeficient):
                warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
            elif self.rank_reported:
                log.debug(str(w.message))
            else:
                # once per state
                log.warning(f"{w.message} Further clips on this stream are logged at debug level.")
                self.rank_reported = True
        return model

    def _fit_or_fall_back(self, data: LabeledMatrix) -> TrainedModel:
        try:
            return fit(self.spec, data)
        except SingularCovariance:
            log.debug(f"Singular covariance on {data.n_features} features, retrying with 10x ridge")
        try:
            return fit(self.spec.with_ridge(self.spec.ridge * SINGULAR_RETRY_FACTOR), data)
        except SingularCovariance:
            log.debug("Still singular, using knn for this sample")
        return fit(self.spec.as_knn(), data)


def init(
    training_set: LabeledMatrix,
    spec: ClassifierSpec,
    thresholds: SelectionThresholds = SelectionThresholds(),
    sensor_map: Optional[SensorMap] = None,
    active_sensors: Optional[list[str]] = None,
) -> UosState:
    """
    Reservoir = the training set grouped by true label, capacities frozen to
    the per-class training counts; pre-selection computed once, here.

    `active_sensors` restricts the array to a subset of the map's sensors
    (the rest of the stream columns stay invisible to the model).
    """
    sensor_map = sensor_map or SensorMap.uniform(training_set.n_features)
    if sensor_map.n_features != training_set.n_features:
        raise DimensionMismatch(
            f"Sensor map covers {sensor_map.n_features} features, training set has {training_set.n_features}"
        )
    active = list(active_sensors) if active_sensors is not None else sensor_map.ids
    columns = sorted(f for s in active for f in sensor_map.features(s))

    reservoir = Reservoir.from_training(training_set, columns)
    state = UosState(
        reservoir=reservoir,
        preselected=np.zeros(training_set.n_features, dtype=bool),
        spec=spec,
        thresholds=thresholds,
        sensor_map=sensor_map,
        active_sensors=active,
        log=SelectionLog(training_set.n_features),
    )
    state.refresh_preselection()
    log.debug(
        f"UOS init: capacities {reservoir.capacity}, "
        f"{int(state.preselected.sum())}/{len(columns)} features preselected"
    )
    return state


def classify_and_adapt(state: UosState, sample: np.ndarray, sample_index: Optional[int] = None) -> Label:
    index = len(state.log) if sample_index is None else sample_index
    return state.step(sample, index).predicted


@dataclass
class StandardModel:
    """Trained once on the training set, never adapted."""

    model: TrainedModel
    columns: np.ndarray
    training_digest: str

    @staticmethod
    def train(
        training_set: LabeledMatrix, spec: ClassifierSpec, columns: Optional[np.ndarray] = None
    ) -> "StandardModel":
        cols = np.arange(training_set.n_features) if columns is None else np.asarray(columns)
        data = training_set.columns(cols)
        digest = hashlib.sha256(data.X.tobytes()).hexdigest()
        return StandardModel(fit(spec, data), cols, digest)

    def classify(self, sample: np.ndarray) -> Label:
        return predict(self.model, np.asarray(sample, dtype=float)[self.columns])
