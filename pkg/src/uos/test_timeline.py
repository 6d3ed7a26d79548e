import numpy as np
import pytest

from src.classifiers import ClassifierSpec
from src.types.data import LabeledMatrix, SensorMap
from . import init, selection_timeline


@pytest.fixture
def three_sensor_state():
    spread = np.array([-0.6, -0.2, 0.2, 0.6])
    X = np.vstack([np.column_stack([5 + spread] * 3), np.column_stack([15 + spread] * 3)])
    train = LabeledMatrix(X, np.array(["A"] * 4 + ["B"] * 4))
    return init(train, ClassifierSpec("knn"), sensor_map=SensorMap.uniform(3))


def run_stream(state, n, fault_at=None, fault_sensor=2, seed=0):
    rng = np.random.default_rng(seed)
    truth = ["A", "B"] * (n // 2)
    for t, y in enumerate(truth):
        x = (5.0 if y == "A" else 15.0) + rng.normal(0, 0.3, size=3)
        if fault_at is not None and t >= fault_at:
            x[fault_sensor] = 0.0
        state.step(x, t)
    return truth


def test_needs_a_classified_sample(three_sensor_state):
    with pytest.raises(ValueError):
        selection_timeline(three_sensor_state)


def test_no_fault_every_sensor_gets_selected(three_sensor_state):
    run_stream(three_sensor_state, 60)
    rates = selection_timeline(three_sensor_state).overall_rates()
    assert set(rates) == {"S1", "S2", "S3"}
    assert all(r > 0 for r in rates.values())


def test_zero_faulted_sensor_rate_decays(three_sensor_state):
    truth = run_stream(three_sensor_state, 120, fault_at=40)
    timeline = selection_timeline(three_sensor_state)
    rates = timeline.sensor_rates(window=30)
    assert rates["S3"].iloc[39] > 0.5
    assert rates["S3"].iloc[40 + 40] < 0.05
    assert rates["S1"].iloc[-1] > 0.5
    frame = timeline.to_frame(truth)
    assert list(frame.columns) == [
        "sample_index", "feature_0", "feature_1", "feature_2", "predicted", "truth"
    ]
    assert len(frame) == 120


def test_window_must_be_positive(three_sensor_state):
    run_stream(three_sensor_state, 4)
    with pytest.raises(ValueError):
        selection_timeline(three_sensor_state).sensor_rates(window=0)
