"""Dataset serialization: train.csv + test.csv + dataset.json sidecar."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from src.types.data import Dataset, LabeledMatrix

log = logging.getLogger(__name__)

TRAIN_FILE = "train.csv"
TEST_FILE = "test.csv"
SIDECAR_FILE = "dataset.json"


def feature_columns(n_features: int) -> list[str]:
    return [f"f{i}" for i in range(n_features)]


def matrix_to_frame(m: LabeledMatrix) -> pd.DataFrame:
    """Columns: index, label, f0..f{p-1}."""
    df = pd.DataFrame(m.X, columns=feature_columns(m.n_features))
    df.insert(0, "label", m.labels)
    df.insert(0, "index", m.index)
    return df


def label_kind(labels: np.ndarray) -> str:
    return "int" if np.issubdtype(np.asarray(labels).dtype, np.integer) else "str"


def to_dir(dataset: Dataset, out_dir: str | Path) -> list[Path]:
    """Write the dataset under `out_dir`; returns the files written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    paths = []
    for name, m in ((TRAIN_FILE, dataset.train), (TEST_FILE, dataset.test)):
        path = out / name
        # repr-precision floats read back bit-exact with float_precision="round_trip"
        matrix_to_frame(m).to_csv(path, index=False)
        paths.append(path)

    sidecar = {
        "sensor_map": dataset.sensor_map.to_dict(),
        "label_kind": label_kind(dataset.train.labels),
        "n_features": dataset.train.n_features,
        "meta": dataset.meta,
    }
    path = out / SIDECAR_FILE
    with open(path, "w") as f:
        json.dump(sidecar, f, indent=2, sort_keys=True)
    paths.append(path)

    log.info(
        f"Wrote dataset to {out}: train {dataset.train.n_rows} rows, "
        f"test {dataset.test.n_rows} rows, {dataset.train.n_features} features"
    )
    return paths
