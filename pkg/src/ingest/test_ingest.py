import os
from pathlib import Path

import numpy as np
import pytest

from src.types.errors import ConfigError, InsufficientRecords, MalformedLine, MissingFeatureIndex
from . import (
    GasFilter,
    RawRecord,
    SubsetSpec,
    batch_order,
    mox_sensor_map,
    parse_files,
    parse_line,
    select_subset,
)


def make_line(gas, conc, rng=None, base=0.0):
    rng = rng or np.random.default_rng(0)
    values = base + rng.normal(size=128)
    values[0] = 15596.16
    values[1] = 1.868245
    pairs = " ".join(f"{i + 1}:{v:.6f}" for i, v in enumerate(values))
    return f"{gas};{conc:.6f} {pairs}"


def write_batch(path: Path, gases, seed=0):
    rng = np.random.default_rng(seed)
    path.write_text("\n".join(make_line(g, c, rng, base=g) for g, c in gases) + "\n")
    return path


def test_parse_line():
    rec = parse_line(make_line(4, 50.0), "batch1.dat", 7)
    assert (rec.gas, rec.concentration) == (4, 50.0)
    assert rec.features.shape == (128,)
    assert rec.features[0] == 15596.16
    assert rec.features[1] == pytest.approx(1.868245)
    assert (rec.source, rec.line) == ("batch1.dat", 7)


def test_record_line_round_trip():
    rec = parse_line(make_line(2, 250.0, np.random.default_rng(1)))
    again = parse_line(rec.to_line())
    np.testing.assert_allclose(again.features, rec.features, rtol=1e-9)
    assert again.concentration == rec.concentration


def test_index_out_of_range():
    with pytest.raises(MalformedLine):
        parse_line(make_line(1, 10.0) + " 129:1.0")


def test_missing_index():
    text = make_line(1, 10.0).replace(" 128:", " 127:")
    with pytest.raises(MissingFeatureIndex):
        parse_line(text)


@pytest.mark.parametrize("text", ["4 1:2.0", "x;50 1:2.0", "4;50 1=2.0", "4;50 1:abc"])
def test_malformed(text):
    with pytest.raises(MalformedLine):
        parse_line(text)


def test_sensor_of_feature():
    assert RawRecord.sensor_of(1) == 0
    assert RawRecord.sensor_of(8) == 0
    assert RawRecord.sensor_of(9) == 1
    assert RawRecord.sensor_of(128) == 15


def test_batches_in_numeric_order(tmp_path):
    paths = [tmp_path / n for n in ["batch10.dat", "batch2.dat", "batch1.dat"]]
    assert [p.name for p in batch_order(paths)] == ["batch1.dat", "batch2.dat", "batch10.dat"]


def test_parse_files_chronological(tmp_path):
    write_batch(tmp_path / "batch2.dat", [(2, 250.0)])
    write_batch(tmp_path / "batch1.dat", [(4, 50.0), (6, 1.0)])
    records = parse_files([tmp_path / "batch2.dat", tmp_path / "batch1.dat"])
    assert [r.gas for r in records] == [4, 6, 2]
    assert records[2].source.endswith("batch2.dat")


def test_malformed_line_fatal_or_skipped(tmp_path):
    path = write_batch(tmp_path / "batch1.dat", [(4, 50.0)])
    path.write_text(path.read_text() + "garbage\n" + make_line(2, 250.0) + "\n")
    with pytest.raises(MalformedLine) as info:
        parse_files([path])
    assert "batch1.dat:2" in str(info.value)
    records = parse_files([path], permissive=True)
    assert [r.gas for r in records] == [4, 2]


def test_no_files_is_empty(caplog):
    assert parse_files([]) == []
    assert "No dataset files" in caplog.text


def records_for(sequence):
    rng = np.random.default_rng(3)
    return [parse_line(make_line(g, c, rng, base=g), "mem", i) for i, (g, c) in enumerate(sequence)]


def test_select_subset_default_split():
    # toluene only starts late in the stream
    sequence = [(4, 50.0), (2, 250.0), (1, 10.0)] * 40 + [(6, 1.0), (4, 50.0), (2, 250.0)] * 80
    records = records_for(sequence)
    train, test, smap = select_subset(records)
    assert (train.n_rows, test.n_rows) == (60, 240)
    counts = train.class_counts()
    assert "toluene" not in counts
    assert counts == {"acetaldehyde": 30, "ethylene": 30}
    assert "toluene" in test.class_counts()
    # chronological, no re-sorting
    assert np.all(np.diff(np.concatenate([train.index, test.index])) > 0)
    assert smap.n_features == 128 and len(smap.ids) == 16


def test_concentration_tolerance():
    records = records_for([(4, 50.0000000001)] * 5 + [(4, 50.1)] * 5)
    spec = SubsetSpec(gases=(GasFilter(4, 50.0),), train=3, test=2)
    train, test, _ = select_subset(records, spec)
    assert test.index.tolist() == [3, 4]


def test_per_gas_targets():
    records = records_for([(4, 50.0)] * 10 + [(2, 250.0)] * 10)
    spec = SubsetSpec(gases=(GasFilter(4, 50.0, 4), GasFilter(2, 250.0, 4)), train=4, test=4)
    train, test, _ = select_subset(records, spec)
    assert train.labels.tolist() == ["acetaldehyde"] * 4
    assert test.labels.tolist() == ["ethylene"] * 4


def test_absent_gas_reports_deficit():
    records = records_for([(4, 50.0)] * 10)
    spec = SubsetSpec(gases=(GasFilter(4, 50.0, 5), GasFilter(6, 1.0, 5)), train=6, test=4)
    with pytest.raises(InsufficientRecords) as info:
        select_subset(records, spec)
    assert info.value.deficits == {"toluene@1": 5}


def test_bad_targets():
    with pytest.raises(ConfigError):
        SubsetSpec(gases=(GasFilter(4, 50.0, 10),), train=6, test=6)


def test_sensor_models():
    smap = mox_sensor_map()
    assert smap.features("S1") == tuple(range(8))
    assert smap.models["S1"] == "TGS2600"
    assert smap.models["S16"] == "TGS2620"
    assert smap.same_model("S5") == ["S6", "S7", "S8"]


@pytest.fixture
def dataset_dir():
    root = os.environ.get("SENSORFIX_DATA")
    if not root:
        pytest.skip("SENSORFIX_DATA not set: public gas-sensor drift batch files unavailable")
    return Path(root)


def test_public_dataset_subset(dataset_dir):
    records = parse_files(sorted(dataset_dir.glob("batch*.dat")))
    first = next(r for r in records if r.gas == 4 and r.concentration == pytest.approx(50.0))
    assert first.features.shape == (128,)
    train, test, _ = select_subset(records)
    assert (train.n_rows, test.n_rows) == (60, 240)
