import numpy as np
import pytest

from src.types.errors import DegenerateVariance
from .fisher import fds_or_limit, fds_table, pairwise_fds, preselect_features


def test_identical_constant_classes_score_zero():
    assert pairwise_fds([1, 1, 1], [1, 1, 1]) == 0.0


def test_hand_computed_example():
    # mu_a=1, mu_b=11, mu=6: SB = 25 + 25, SW = 1 + 1
    assert pairwise_fds([0, 2], [10, 12]) == pytest.approx(25.0)


def test_same_distribution_scores_zero():
    assert pairwise_fds([0, 2], [0, 2]) == 0.0


def test_constant_classes_with_different_means():
    with pytest.raises(DegenerateVariance) as info:
        pairwise_fds([1, 1], [3, 3])
    assert info.value.means_differ
    assert fds_or_limit([1, 1], [3, 3]) == float("inf")


def test_needs_two_values_per_class():
    with pytest.raises(ValueError):
        pairwise_fds([1], [2, 3])


def test_symmetric_and_shift_invariant():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a = rng.normal(0, 1, size=rng.integers(2, 12))
        b = rng.normal(rng.uniform(-3, 3), rng.uniform(0.2, 2), size=rng.integers(2, 12))
        c = rng.uniform(-100, 100)
        assert pairwise_fds(a, b) == pytest.approx(pairwise_fds(b, a), rel=1e-12)
        assert pairwise_fds(a + c, b + c) == pytest.approx(pairwise_fds(a, b), rel=1e-9)


def test_fds_table_is_symmetric_lookup():
    X = np.array([[0.0, 5], [2, 6], [10, 5], [12, 6], [20, 5], [22, 6]])
    y = np.array(["a", "a", "b", "b", "c", "c"])
    table = fds_table(X, y)
    assert table.get(0, "a", "b") == table.get(0, "b", "a") == pytest.approx(25.0)
    assert table.best()[1] == 0.0


def test_preselection_drops_useless_feature():
    X = np.array(
        [
            [0.0, 5.0, 1.0],
            [2.0, 6.0, 1.0],
            [10.0, 5.0, 1.0],
            [12.0, 6.0, 1.0],
        ]
    )
    y = np.array([1, 1, 2, 2])
    mask = preselect_features(X, y)
    # feature 0: FDS 25; feature 1: equal means; feature 2: constant
    assert mask.tolist() == [True, False, False]


def test_preselection_threshold_is_strict():
    # a=[0,2], b=[2,4]: mu=2, SB=1+1, SW=1+1 -> FDS exactly 1
    X = np.array([[0.0], [2.0], [2.0], [4.0]])
    y = np.array([1, 1, 2, 2])
    assert pairwise_fds([0, 2], [2, 4]) == pytest.approx(1.0)
    assert not preselect_features(X, y)[0]


def test_preselection_needs_two_classes():
    with pytest.raises(ValueError):
        preselect_features(np.ones((3, 2)), np.array([1, 1, 1]))
