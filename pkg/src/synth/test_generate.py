import numpy as np
import pytest

from src.classifiers import ClassifierSpec
from src.numerics import preselect_features
from src.types.errors import ConfigError, OrderingViolation
from src.uos import StandardModel
from . import SynthConfig, generate, make_replica, preserves_ordering, with_replicas


def standard_rate(dataset, kind):
    model = StandardModel.train(dataset.train, ClassifierSpec(kind))
    hits = [model.classify(x) == y for x, y in zip(dataset.test.X, dataset.test.labels)]
    return float(np.mean(hits))


def test_default_shapes_and_labels():
    ds = generate()
    assert ds.train.X.shape == (60, 5)
    assert ds.test.X.shape == (1200, 5)
    assert ds.train.class_counts() == {1: 20, 2: 20, 3: 20}
    assert ds.test.labels[:6].tolist() == [1, 2, 3, 1, 2, 3]
    assert ds.test.class_counts() == {1: 400, 2: 400, 3: 400}
    assert ds.test.index[0] == 1 and ds.test.index[-1] == 1200
    assert ds.sensor_map.ids == ["S1", "S2", "S3", "S4", "S5"]


def test_seed_reproducibility():
    a, b = generate(SynthConfig(seed=3)), generate(SynthConfig(seed=3))
    np.testing.assert_array_equal(a.test.X, b.test.X)
    np.testing.assert_array_equal(a.train.X, b.train.X)
    c = generate(SynthConfig(seed=4))
    assert c.test.X.shape == a.test.X.shape
    assert not np.array_equal(c.test.X, a.test.X)


def test_drift_is_common_to_all_classes():
    cfg = SynthConfig(noise_std=1e-9)
    ds = generate(cfg)
    offsets = ds.test.X - cfg.centers()[ds.test.labels - 1]
    np.testing.assert_allclose(offsets, cfg.drift(ds.test.index), atol=1e-6)
    # same offset for the three classes at (almost) the same time
    np.testing.assert_allclose(offsets[0] - offsets[1], -cfg.drift([1])[0], atol=1e-6)


def test_overlap_pair_is_pulled_together():
    cfg = SynthConfig()
    raw = np.asarray(cfg.class_centers)
    pulled = cfg.centers()
    assert np.linalg.norm(pulled[0] - pulled[1]) == pytest.approx(0.9 * np.linalg.norm(raw[0] - raw[1]))
    np.testing.assert_array_equal(pulled[2], raw[2])


def test_every_sensor_is_preselected():
    ds = generate()
    assert preselect_features(ds.train.X, ds.train.labels).all()


def test_config_validation():
    with pytest.raises(ConfigError):
        SynthConfig(drift_direction=(1.0, 0, 0, 0, 1.0))
    with pytest.raises(ConfigError):
        SynthConfig(replica_max_dev=0.6)
    with pytest.raises(ConfigError):
        SynthConfig(overlap_pair=(2, 2))
    with pytest.raises(ConfigError):
        SynthConfig.from_dict({"drift": 1})


def test_config_dict_round_trip():
    cfg = SynthConfig(seed=9, drift_rate=0.01)
    assert SynthConfig.from_dict(cfg.to_dict()) == cfg


def test_stationary_profile_is_easy():
    ds = generate(SynthConfig(drift_rate=0.0, n_test=300))
    assert standard_rate(ds, "lda") >= 0.95


@pytest.mark.parametrize("kind", ["knn", "lda", "plsda"])
def test_drift_degrades_standard_classifiers(kind):
    assert 0.40 <= standard_rate(generate(SynthConfig(seed=1)), kind) <= 0.55


def test_each_sensor_singles_out_one_class_from_below():
    # no class lies strictly between the other two on any sensor
    for column in SynthConfig().centers().T:
        low, mid, high = np.sort(column)
        assert mid - low >= 5.0
        assert high - mid <= 1.0


def test_training_block_is_near_separable():
    ds = generate()
    model = StandardModel.train(ds.train, ClassifierSpec("lda"))
    hits = [model.classify(x) == y for x, y in zip(ds.train.X, ds.train.labels)]
    assert np.mean(hits) >= 0.95


# --- replicas ----------------------------------------------------------------


def test_zero_deviation_replica_has_unit_gains():
    cfg = SynthConfig(replica_max_dev=0.0)
    replica = make_replica(cfg, "S3", seed=0)
    np.testing.assert_array_equal(replica.gains, np.ones(3))
    np.testing.assert_array_equal(replica.centers(), cfg.centers()[:, 2])


def test_replica_gains_stay_bounded_and_ordered():
    cfg = SynthConfig(
        class_centers=((10.0,) * 5, (20.0,) * 5, (30.0,) * 5), overlap_scale=1.0
    )
    for seed in range(1000):
        r = make_replica(cfg, "S1", seed)
        assert np.all((r.gains >= 0.8) & (r.gains <= 1.2))
        c = r.centers()
        assert 8 <= c[0] <= 12 and 16 <= c[1] <= 24 and 24 <= c[2] <= 36
        assert c[0] < c[1] < c[2]


def test_tight_centres_violate_ordering():
    cfg = SynthConfig(
        class_centers=((10.0,) * 5, (10.5,) * 5, (11.0,) * 5),
        overlap_scale=1.0,
        replica_max_dev=0.5,
    )
    raised = 0
    for seed in range(20):
        try:
            make_replica(cfg, "S2", seed, max_tries=1)
        except OrderingViolation:
            raised += 1
    assert raised > 0


def test_ties_are_unconstrained():
    assert preserves_ordering(np.array([8.0, 8.0, 16.0]), np.array([9.0, 7.0, 15.0]))
    assert not preserves_ordering(np.array([6.0, 14.0, 14.5]), np.array([6.0, 15.0, 14.0]))


def test_with_replicas_extends_the_array():
    ds = with_replicas(generate(SynthConfig(n_test=30)), seed=5)
    assert ds.train.X.shape == (60, 10)
    assert ds.test.X.shape == (30, 10)
    assert ds.sensor_map.ids[5:] == ["S1r", "S2r", "S3r", "S4r", "S5r"]
    assert ds.sensor_map.same_model("S3") == ["S3r"]
    # replica of S3 singles out class 1 like S3 does
    means = [ds.train.X[ds.train.labels == c, 7].mean() for c in (1, 2, 3)]
    assert means[0] < min(means[1], means[2]) - 5
    assert abs(means[1] - means[2]) < 3


@pytest.mark.parametrize("sensor", ["S1", "S2", "S3", "S4", "S5"])
def test_replica_keeps_tied_classes_tied(sensor):
    cfg = SynthConfig()
    column = cfg.sensor_ids.index(sensor)
    raw = np.asarray(cfg.class_centers)[:, column]
    odd = int(np.argmin(raw))
    pair = [k for k in range(3) if k != odd]
    for seed in range(50):
        r = make_replica(cfg, sensor, seed)
        assert r.gains[pair[0]] == r.gains[pair[1]]
        c = r.centers()
        assert c[odd] < c[pair[0]] and c[odd] < c[pair[1]]


def test_distinct_levels_get_their_own_gains():
    cfg = SynthConfig(class_centers=((10.0,) * 5, (20.0,) * 5, (30.0,) * 5), overlap_scale=1.0)
    r = make_replica(cfg, "S2", seed=3)
    assert len(set(r.gains.tolist())) == 3
