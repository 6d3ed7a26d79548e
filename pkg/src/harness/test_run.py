import numpy as np
import pytest

from src.ingest import mox_sensor_map
from src.types import RunResult
from src.types.errors import ExperimentAborted
from src.uos import StandardModel
from . import (
    ExperimentConfig,
    FaultEvent,
    choose_array,
    compare_modes,
    prepare_dataset,
    recovery_delays,
    repair_window_rates,
    run_experiment,
    run_one,
    selection_checks,
    sr_durations,
    summarize,
)


def config(**kw) -> ExperimentConfig:
    d = {"mode": "sr", "synth": {"n_test": 300}, "runs": {"n": 1, "seed": 3}}
    d.update(kw)
    return ExperimentConfig.from_dict(d)


@pytest.fixture(scope="module")
def sr_run():
    return run_one(config(faults=[{"start": 20, "sensor": "S3"}]), 0)


def test_sr_episode(sr_run):
    assert not sr_run.failed, sr_run.error
    names = [e.name for e in sr_run.episodes.events]
    assert names == ["fault", "remove", "begin_repair", "ready", "merge"]
    assert sr_run.replicas == {"S3": "S3r"}
    assert len(sr_run.predicted) == len(sr_run.truth) == 300
    (duration,) = sr_durations(sr_run)
    assert 60 <= duration <= 150
    assert len(sr_run.pool_mislabel) == 1 and sr_run.pool_mislabel[0] <= 0.5
    (window_rate,) = repair_window_rates(sr_run)
    assert 0.5 <= window_rate <= 1.0
    assert sr_run.selection_rates["S3r"] > 0
    assert not sr_run.flagged


def test_removed_sensor_is_never_selected_again(sr_run):
    cols = list(sr_run.sensor_map.features("S3"))
    assert not sr_run.used[20:, cols].any()
    (check,) = selection_checks(sr_run)
    assert check.decays_within(30)
    assert check.replacement_id == "S3r"
    assert check.merged_at > 20


def test_replacement_quarantined_until_merge(sr_run):
    merge_at = sr_run.episodes.events[-1].sample_index
    cols = list(sr_run.sensor_map.features("S3r"))
    assert not sr_run.used[: merge_at + 1, cols].any()


def test_uos_mode_never_replaces():
    result = run_one(config(mode="uos", faults=[{"start": 20, "sensor": "S3"}]), 0)
    assert [e.name for e in result.episodes.events] == ["fault"]
    assert result.replicas == {}
    assert set(result.selection_rates) == {"S1", "S2", "S3", "S4", "S5"}


def test_standard_mode_is_the_standard_model():
    cfg = config(mode="standard", synth={"n_test": 60})
    result = run_one(cfg, 0)
    dataset = prepare_dataset(cfg, cfg.runs.run_seed(0), None)
    model = StandardModel.train(dataset.train, cfg.classifier, np.arange(5))
    assert result.predicted == [model.classify(x) for x in dataset.test.X]
    assert result.used[:, :5].all() and not result.used[:, 5:].any()


def test_runs_are_deterministic(sr_run):
    again = run_one(config(faults=[{"start": 20, "sensor": "S3"}]), 0)
    assert again.to_record() == sr_run.to_record()
    np.testing.assert_array_equal(again.selected, sr_run.selected)
    other = run_one(config(faults=[{"start": 20, "sensor": "S3"}]), 1)
    assert other.run_seed == 2
    assert other.to_record() != sr_run.to_record()


def test_failed_run_is_recorded():
    result = run_one(config(faults=[{"start": 5, "sensor": "S9"}]), 0)
    assert result.failed
    assert result.error.startswith("ConfigError")
    assert result.to_record()["rate"] is None


def test_experiment_aborts_when_runs_fail():
    cfg = config(faults=[{"start": 5, "sensor": "S9"}], runs={"n": 2})
    with pytest.raises(ExperimentAborted):
        run_experiment(cfg, progress=False)


def test_run_experiment_summary():
    cfg = config(mode="uos", synth={"n_test": 60}, runs={"n": 3, "seed": 8})
    exp = run_experiment(cfg, progress=False)
    assert [r.run_index for r in exp.results] == [0, 1, 2]
    assert exp.summary.n == 3 and exp.summary.n_failed == 0
    assert set(exp.summary.rates) == {8, 9, 10}
    assert exp.summary.min <= exp.summary.median <= exp.summary.max
    assert list(exp.summary.selection_rates) == ["S1", "S2", "S3", "S4", "S5"]


@pytest.mark.parametrize("kind", ["lda", "knn"])
def test_sequential_schedule_keeps_one_sensor_absent_at_most(kind):
    cfg = config(synth={"n_test": 1200}, fault_preset={"name": "sequential"}, classifier={"kind": kind})
    result = run_one(cfg, 0)
    assert not result.failed, result.error
    absent, worst = 0, 0
    for e in result.episodes.events:
        absent += {"remove": 1, "merge": -1}.get(e.name, 0)
        worst = max(worst, absent)
    assert worst == 1
    assert len(result.replicas) == 4
    assert len(set(result.replicas)) == 4
    # every repair ends before the next fault
    assert not result.flagged, result.flags
    assert max(sr_durations(result)) < 200


def test_temporary_fault_comes_back():
    fault = {"start": 30, "duration": 15, "sensor": "S2", "action": "none"}
    result = run_one(config(mode="uos", synth={"n_test": 150}, faults=[fault]), 0)
    assert [e.name for e in result.episodes.events] == ["fault"]
    (delay,) = recovery_delays(result)
    assert delay is not None
    assert recovery_delays(result, [FaultEvent(30, 15, "S2")]) == [delay]


def test_plsda_core_keeps_up_with_drift():
    result = run_one(config(mode="uos", classifier={"kind": "plsda"}), 0)
    assert not result.failed, result.error
    assert result.rate >= 0.93


def test_temporary_zero_fault_costs_knn_little():
    clean = run_one(config(mode="uos", classifier={"kind": "knn"}), 0)
    fault = {"start": 100, "duration": 15, "sensor": "S1", "action": "none"}
    faulted = run_one(config(mode="uos", classifier={"kind": "knn"}, faults=[fault]), 0)
    errors = [sum(p != y for p, y in zip(r.predicted, r.truth)) for r in (clean, faulted)]
    assert errors[1] <= errors[0] + 3


def test_experimental_array_one_unit_per_model():
    smap = mox_sensor_map()
    for seed in range(20):
        active, spares = choose_array(smap, np.random.default_rng(seed), randomize=True)
        assert sorted(smap.models[s] for s in active) == ["TGS2600", "TGS2602", "TGS2610", "TGS2620"]
        for sid, spare in spares.items():
            assert spare != sid and spare not in active
            assert smap.models[spare] == smap.models[sid]


def fake(rates, mode="uos", seeds=None):
    out = []
    for i, r in enumerate(rates):
        n_hit = int(round(r * 4))
        res = RunResult(i, (seeds or list(range(len(rates))))[i], mode, "lda", "zero")
        res.truth = [1, 1, 1, 1]
        res.predicted = [1] * n_hit + [2] * (4 - n_hit)
        out.append(res)
    return out


def test_summarize():
    s = summarize(fake([0.5, 1.0, 0.75]))
    assert s.mean == pytest.approx(0.75)
    assert s.median == pytest.approx(0.75)
    assert s.std == pytest.approx(0.25)
    assert (s.min, s.max) == (0.5, 1.0)
    assert s.q1 == pytest.approx(0.625) and s.q3 == pytest.approx(0.875)


def test_failed_runs_left_out_of_statistics():
    runs = fake([0.5, 1.0])
    runs[1].failed = True
    s = summarize(runs)
    assert s.n == 1 and s.n_failed == 1 and s.mean == 0.5 and s.std == 0.0


def test_mode_against_itself():
    s = summarize(fake([0.5, 0.75, 1.0, 0.25]))
    cmp = compare_modes(s, s)
    assert cmp.mean_diff == 0.0
    assert cmp.p_value == 1.0 and not cmp.significant


def test_paired_difference_is_significant():
    seeds = list(range(12))
    a = summarize(fake([1.0] * 12, "sr", seeds))
    b = summarize(fake([0.5, 0.75] * 6, "uos", seeds))
    cmp = compare_modes(a, b)
    assert cmp.n_pairs == 12
    assert cmp.mean_diff == pytest.approx(0.375)
    assert cmp.significant and cmp.verdict == "sr/lda/zero higher"


def test_unpaired_comparison():
    with pytest.raises(ValueError):
        compare_modes(summarize(fake([1.0], seeds=[1])), summarize(fake([1.0], seeds=[2])))
