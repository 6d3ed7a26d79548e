import pytest

from src.types.errors import ConfigError
from . import ExperimentConfig, FaultEvent, cast_scalar, config_hash, merge_overrides

EXAMPLE = """
mode = "sr"

[dataset]
source = "synthetic"
profile = "default"

[classifier]
kind = "knn"
k = 5

[thresholds]
t1 = 0.01
membership = "density"

[fault_preset]
name = "sequential"
type = "random"

[runs]
n = 10
seed = 7
workers = 2

[synth]
n_test = 300
"""


@pytest.mark.parametrize(
    "text, value",
    [
        ("true", True),
        ("False", False),
        ("42", 42),
        ("-3", -3),
        ("0.5", 0.5),
        ("1e-3", 1e-3),
        ("none", None),
        ("plsda", "plsda"),
        ("", ""),
    ],
)
def test_cast_scalar(text, value):
    assert cast_scalar(text) == value


def test_overrides_take_precedence():
    raw = {"classifier": {"kind": "lda"}, "faults": [{"start": 10}]}
    merged = merge_overrides(raw, ["classifier.kind=knn", "runs.n=3", "faults.0.start=20"])
    assert merged["classifier"]["kind"] == "knn"
    assert merged["runs"] == {"n": 3}
    assert merged["faults"][0]["start"] == 20
    # input untouched
    assert raw["classifier"]["kind"] == "lda"


@pytest.mark.parametrize("bad", ["novalue", "=3", "faults.x.start=1", "mode.inner=1"])
def test_bad_overrides(bad):
    with pytest.raises(ConfigError):
        merge_overrides({"mode": "uos", "faults": [{}]}, [bad])


def test_load_toml(tmp_path):
    path = tmp_path / "exp.toml"
    path.write_text(EXAMPLE)
    cfg = ExperimentConfig.load(path, ["runs.n=4"])
    assert cfg.mode == "sr"
    assert cfg.classifier.kind == "knn" and cfg.classifier.k == 5
    assert cfg.thresholds.thresh1 == 0.01
    assert cfg.thresholds.membership == "density"
    assert cfg.runs.n == 4 and cfg.runs.seed == 7 and cfg.runs.workers == 2
    assert cfg.synth.n_test == 300
    assert [e.start for e in cfg.schedule()] == [200, 400, 600, 800]
    assert cfg.fault_type == "random"


def test_defaults():
    cfg = ExperimentConfig.load(None)
    assert cfg.mode == "uos"
    assert cfg.runs.n == 100
    assert cfg.classifier.kind == "lda"
    assert cfg.schedule() == []
    assert cfg.fault_type == "none"


def test_dict_round_trip():
    cfg = ExperimentConfig.from_dict(
        {
            "mode": "sr",
            "faults": [{"start": 5, "duration": 15, "sensor": "S2", "type": "random"}],
            "uos": {"sr_threshold": 12},
            "dataset": {"profile": "stationary"},
        }
    )
    assert cfg.synth.drift_rate == 0.0
    again = ExperimentConfig.from_dict(cfg.to_dict())
    assert again == cfg
    assert again.hash() == cfg.hash()


def test_hash_tracks_content():
    a = ExperimentConfig.from_dict({"runs": {"seed": 1}})
    b = ExperimentConfig.from_dict({"runs": {"seed": 2}})
    assert a.hash() != b.hash()
    assert config_hash({"x": 1, "y": 2}) == config_hash({"y": 2, "x": 1})


def test_run_seed_is_xor():
    cfg = ExperimentConfig.from_dict({"runs": {"seed": 0b1010}})
    assert [cfg.runs.run_seed(i) for i in range(4)] == [10, 11, 8, 9]


@pytest.mark.parametrize(
    "d",
    [
        {"mode": "turbo"},
        {"colour": {}},
        {"classifier": {"kind": "svm"}},
        {"classifier": {"k": 4}},
        {"classifier": {"depth": 3}},
        {"thresholds": {"t2": 0.5}},
        {"runs": {"n": 0}},
        {"dataset": {"source": "ingested"}},
        {"dataset": {"profile": "wild"}},
        {"synth": {"n_sensors": 4}},
        {"faults": [{"duration": 3}]},
        {"faults": [{"start": 1}], "fault_preset": {"name": "single"}},
        {"fault_preset": {"name": "burst"}},
    ],
)
def test_invalid_configs(d):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(d)


def test_fault_dict_keys():
    e = FaultEvent.from_dict({"start": 3, "duration": "permanent", "sensor": "S1", "action": "none"})
    assert e.permanent and e.action == "none"
    assert FaultEvent.from_dict(e.to_dict()) == e
