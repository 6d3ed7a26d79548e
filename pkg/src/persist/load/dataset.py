"""
Loading a dataset written by `persist.save.dataset`.
"""

from __future__ import annotations

import json
from pathlib import Path

import pandas as pd

from src.types.data import Dataset, LabeledMatrix, SensorMap
from src.types.errors import ConfigError

from ..save.dataset import SIDECAR_FILE, TEST_FILE, TRAIN_FILE, feature_columns


def frame_to_matrix(df: pd.DataFrame, n_features: int, kind: str) -> LabeledMatrix:
    cols = feature_columns(n_features)
    missing = [c for c in ["index", "label", *cols] if c not in df.columns]
    if missing:
        raise ConfigError(f"Dataset file lacks columns {missing[:5]}")
    labels = df["label"].to_numpy()
    labels = labels.astype(int) if kind == "int" else labels.astype(str)
    return LabeledMatrix(df[cols].to_numpy(dtype=float), labels, df["index"].to_numpy(dtype=int))


def read_matrix(path: Path, n_features: int, kind: str) -> LabeledMatrix:
    df = pd.read_csv(path, dtype={"label": str}, float_precision="round_trip")
    return frame_to_matrix(df, n_features, kind)


def from_dir(path: str | Path) -> Dataset:
    root = Path(path)
    sidecar_path = root / SIDECAR_FILE
    if not sidecar_path.is_file():
        raise FileNotFoundError(f"No {SIDECAR_FILE} in {root}")
    with open(sidecar_path, "r") as f:
        sidecar = json.load(f)

    n = int(sidecar["n_features"])
    kind = sidecar.get("label_kind", "str")
    return Dataset(
        train=read_matrix(root / TRAIN_FILE, n, kind),
        test=read_matrix(root / TEST_FILE, n, kind),
        sensor_map=SensorMap.from_dict(sidecar["sensor_map"]),
        meta=sidecar.get("meta", {}),
    )


def dataset_files(path: str | Path) -> list[Path]:
    root = Path(path)
    return [root / TRAIN_FILE, root / TEST_FILE, root / SIDECAR_FILE]


def is_dataset_dir(path: str | Path) -> bool:
    return all(p.is_file() for p in dataset_files(path))
