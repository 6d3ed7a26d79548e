import json

import numpy as np
import pandas as pd
import pytest

from src.ingest import mox_sensor_map
from src.persist.save import SIDECAR_FILE, TRAIN_FILE, to_dir
from src.synth import SynthConfig, generate, with_replicas
from src.types import Dataset, LabeledMatrix
from src.types.errors import ConfigError
from .dataset import from_dir, is_dataset_dir


def test_synthetic_round_trip(tmp_path):
    ds = generate(SynthConfig(n_test=45, seed=2)).to_dataset()
    to_dir(ds, tmp_path)
    back = from_dir(tmp_path)

    # Bit-exact floats.
    np.testing.assert_array_equal(back.train.X, ds.train.X)
    np.testing.assert_array_equal(back.test.X, ds.test.X)
    np.testing.assert_array_equal(back.test.index, ds.test.index)
    # Labels keep their integer type.
    assert back.train.labels.tolist() == ds.train.labels.tolist()
    assert np.issubdtype(back.train.labels.dtype, np.integer)
    assert back.sensor_map == ds.sensor_map
    assert back.meta["synth"]["seed"] == 2


def test_replica_models_survive(tmp_path):
    ds = with_replicas(generate(SynthConfig(n_test=9)), seed=1).to_dataset()
    to_dir(ds, tmp_path)
    back = from_dir(tmp_path)
    assert back.sensor_map.same_model("S2") == ["S2r"]


def test_string_labels_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    labels = np.array(["acetaldehyde", "ethylene", "toluene", "ethylene"])
    train = LabeledMatrix(rng.normal(size=(4, 128)), labels, [0, 3, 7, 9])
    test = LabeledMatrix(rng.normal(size=(2, 128)), labels[:2], [11, 12])
    to_dir(Dataset(train, test, mox_sensor_map(), {"source": "ingested"}), tmp_path)

    back = from_dir(tmp_path)
    assert back.train.labels.tolist() == labels.tolist()
    assert back.train.index.tolist() == [0, 3, 7, 9]
    assert back.sensor_map.models["S9"] == "TGS2610"


def test_csv_layout(tmp_path):
    ds = generate(SynthConfig(n_test=3)).to_dataset()
    to_dir(ds, tmp_path)
    df = pd.read_csv(tmp_path / TRAIN_FILE)
    assert list(df.columns) == ["index", "label", "f0", "f1", "f2", "f3", "f4"]
    assert len(df) == 60
    with open(tmp_path / SIDECAR_FILE) as f:
        assert json.load(f)["label_kind"] == "int"


def test_missing_files(tmp_path):
    assert not is_dataset_dir(tmp_path)
    with pytest.raises(FileNotFoundError):
        from_dir(tmp_path)


def test_missing_columns(tmp_path):
    ds = generate(SynthConfig(n_test=3)).to_dataset()
    to_dir(ds, tmp_path)
    df = pd.read_csv(tmp_path / TRAIN_FILE).drop(columns=["f4"])
    df.to_csv(tmp_path / TRAIN_FILE, index=False)
    with pytest.raises(ConfigError):
        from_dir(tmp_path)
