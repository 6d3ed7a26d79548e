"""
Pick the experimental subset out of the parsed records.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from src.types.data import LabeledMatrix, SensorMap
from src.types.errors import ConfigError, InsufficientRecords

from .parse import FEATURES_PER_SENSOR, N_SENSORS, RawRecord

log = logging.getLogger(__name__)

DEFAULT_GAS_NAMES: dict[int, str] = {
    1: "ethanol",
    2: "ethylene",
    3: "ammonia",
    4: "acetaldehyde",
    5: "acetone",
    6: "toluene",
}

# Sensor s (0-based) is a unit of MOX_MODELS[s // 4].
MOX_MODELS: tuple[str, ...] = ("TGS2600", "TGS2602", "TGS2610", "TGS2620")

CONCENTRATION_RTOL = 1e-6


@dataclass(frozen=True)
class GasFilter:
    gas: int
    concentration: float
    # None: no per-gas cap, the first train+test matches overall are taken
    target: Optional[int] = None

    def matches(self, record: RawRecord) -> bool:
        return record.gas == self.gas and math.isclose(
            record.concentration, self.concentration, rel_tol=CONCENTRATION_RTOL
        )


@dataclass(frozen=True)
class SubsetSpec:
    gases: tuple[GasFilter, ...] = (
        GasFilter(4, 50.0),
        GasFilter(2, 250.0),
        GasFilter(6, 1.0),
    )
    train: int = 60
    test: int = 240
    gas_names: dict[int, str] = field(default_factory=lambda: dict(DEFAULT_GAS_NAMES))
    sensor_models: tuple[str, ...] = MOX_MODELS

    def __post_init__(self):
        if self.train < 2 or self.test < 0:
            raise ConfigError(f"Bad split {self.train}/{self.test}")
        targets = [g.target for g in self.gases]
        if all(t is not None for t in targets) and sum(targets) != self.total:
            raise ConfigError(f"Per-gas targets sum to {sum(targets)}, split needs {self.total}")
        if N_SENSORS % len(self.sensor_models):
            raise ConfigError(f"{N_SENSORS} sensors do not split over {len(self.sensor_models)} models")

    @property
    def total(self) -> int:
        return self.train + self.test

    def name_of(self, gas: int) -> str:
        return self.gas_names.get(gas, f"gas{gas}")

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "SubsetSpec":
        kw = dict(d)
        if "gases" in kw:
            kw["gases"] = tuple(
                GasFilter(int(g["gas"]), float(g["concentration"]), g.get("target"))
                for g in kw["gases"]
            )
        if "gas_names" in kw:
            kw["gas_names"] = {int(k): str(v) for k, v in kw["gas_names"].items()}
        if "sensor_models" in kw:
            kw["sensor_models"] = tuple(kw["sensor_models"])
        try:
            return SubsetSpec(**kw)
        except TypeError as e:
            raise ConfigError(f"Bad subset spec: {e}") from None


def mox_sensor_map(models: Sequence[str] = MOX_MODELS) -> SensorMap:
    """16 units x 8 features; consecutive blocks of units share a model."""
    smap = SensorMap.uniform(N_SENSORS, FEATURES_PER_SENSOR)
    per_model = N_SENSORS // len(models)
    return SensorMap(smap.sensors, {sid: models[i // per_model] for i, sid in enumerate(smap.ids)})


def select_subset(
    records: Sequence[RawRecord], spec: SubsetSpec = SubsetSpec()
) -> tuple[LabeledMatrix, LabeledMatrix, SensorMap]:
    """
    The first matching records in chronological order; first `train` rows are
    training, the next `test` rows the stream. Class balance is not enforced.
    """
    taken: list[int] = []
    per_gas = {g: 0 for g in spec.gases}
    for i, rec in enumerate(records):
        if len(taken) == spec.total:
            break
        for g in spec.gases:
            if g.matches(rec) and (g.target is None or per_gas[g] < g.target):
                per_gas[g] += 1
                taken.append(i)
                break

    if len(taken) < spec.total:
        available = {g: sum(g.matches(r) for r in records) for g in spec.gases}
        deficits = {}
        for g in spec.gases:
            name = f"{spec.name_of(g.gas)}@{g.concentration:g}"
            need = g.target if g.target is not None else spec.total
            if available[g] < need:
                deficits[name] = need - available[g]
        raise InsufficientRecords(
            f"Only {len(taken)} of {spec.total} records match; per gas found "
            + ", ".join(f"{spec.name_of(g.gas)}@{g.concentration:g}={available[g]}" for g in spec.gases),
            deficits,
        )

    X = np.vstack([records[i].features for i in taken])
    labels = np.array([spec.name_of(records[i].gas) for i in taken])
    index = np.array(taken)
    smap = mox_sensor_map(spec.sensor_models)

    train = LabeledMatrix(X[: spec.train], labels[: spec.train], index[: spec.train])
    test = LabeledMatrix(X[spec.train :], labels[spec.train :], index[spec.train :])
    log.info(f"Subset: train {train.class_counts()}, test {test.class_counts()}")
    return train, test, smap
