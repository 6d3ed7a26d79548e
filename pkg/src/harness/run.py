"""
Monte Carlo execution: one seeded run per index, in standard, uos or sr mode.

In sr mode the harness plays the fault-detection oracle: a permanent fault
with action "replace" is known `detection_delay` samples after it starts,
the sensor is removed and a spare unit of the same model starts its repair.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from pathlib import Path
from typing import Optional

import numpy as np
from tqdm import tqdm

from src.ingest import parse_files, select_subset
from src.persist.load import from_dir, is_dataset_dir
from src.repair import RepairSession, begin_repair, merge, observe, remove_sensor
from src.synth import generate, with_replicas
from src.types import BeginRepair, Dataset, Fault, Merge, Ready, Remove, RunResult, SensorMap
from src.types.errors import ExperimentAborted
from src.uos import StandardModel, init, selection_timeline

from .config import ExperimentConfig
from .faults import FaultEvent, inject, resolve_schedule, training_bounds
from .stats import SummaryStats, summarize

log = logging.getLogger(__name__)

# Share of runs that must succeed for the statistics to count.
MIN_SUCCESS_FRACTION = 0.95


def load_source(config: ExperimentConfig) -> Optional[Dataset]:
    """The fixed dataset of an ingested experiment; None for synthetic ones."""
    if config.dataset.source == "synthetic":
        return None
    path = Path(config.dataset.path)
    if is_dataset_dir(path):
        return from_dir(path)
    files = sorted(path.glob("batch*.dat")) if path.is_dir() else [path]
    train, test, smap = select_subset(parse_files(files), config.subset)
    return Dataset(train, test, smap, {"source": "ingested", "path": str(path)})


def prepare_dataset(config: ExperimentConfig, run_seed: int, source: Optional[Dataset]) -> Dataset:
    if source is not None:
        return source
    synth = generate(replace(config.synth, seed=run_seed))
    return with_replicas(synth, seed=run_seed).to_dataset()


def choose_array(
    smap: SensorMap, rng: np.random.Generator, randomize: bool
) -> tuple[list[str], dict[str, str]]:
    """
    One active unit per sensor model, plus the spare each would be replaced by.

    Without randomization the first unit of every model is active and the
    next one is its spare (synthetic originals and their replicas).
    """
    groups: dict[str, list[str]] = {}
    for sid in smap.ids:
        groups.setdefault(smap.models.get(sid, sid), []).append(sid)

    active, spares = [], {}
    for units in groups.values():
        pick = units[int(rng.integers(len(units)))] if randomize else units[0]
        active.append(pick)
        rest = [u for u in units if u != pick]
        if rest:
            spares[pick] = rest[int(rng.integers(len(rest)))] if randomize else rest[0]
    return active, spares


@dataclass
class _RunPlan:
    dataset: Dataset
    active: list[str]
    spares: dict[str, str]
    schedule: list[FaultEvent]
    X: np.ndarray


def _plan(config: ExperimentConfig, run_seed: int, source: Optional[Dataset]) -> _RunPlan:
    rng = np.random.default_rng(run_seed)
    dataset = prepare_dataset(config, run_seed, source)
    randomize = dataset.meta.get("source") != "synthetic"
    active, spares = choose_array(dataset.sensor_map, rng, randomize)
    schedule = resolve_schedule(config.schedule(), active, rng)
    faulted = inject(dataset.test.X, schedule, rng, dataset.sensor_map, training_bounds(dataset.train))
    return _RunPlan(dataset, active, spares, schedule, faulted.X)


def _log_faults(result: RunResult, schedule: list[FaultEvent], t: int) -> None:
    for e in schedule:
        if e.start == t:
            result.episodes.add(t, Fault(e.sensor, e.fault_type, e.permanent))


def _run_standard(config: ExperimentConfig, plan: _RunPlan, result: RunResult) -> None:
    smap = plan.dataset.sensor_map
    columns = np.array(sorted(f for s in plan.active for f in smap.features(s)))
    model = StandardModel.train(plan.dataset.train, config.classifier, columns)

    for t, x in enumerate(plan.X):
        _log_faults(result, plan.schedule, t)
        result.predicted.append(model.classify(x))

    used = np.zeros((len(plan.X), smap.n_features), dtype=bool)
    used[:, columns] = True
    result.selected = used
    result.used = used.copy()
    result.selection_rates = {s: 1.0 for s in plan.active}


def _start_repair(
    config: ExperimentConfig, plan: _RunPlan, state, fault: FaultEvent, t: int, result: RunResult
) -> Optional[RepairSession]:
    sid = fault.sensor
    if sid not in state.active_sensors:
        log.debug(f"Sensor {sid} already out of the array at {t}")
        return None
    remove_sensor(state, sid)
    result.episodes.add(t, Remove(sid))

    spare = plan.spares.get(sid)
    if spare is None:
        result.flags.append(f"no-spare:{sid}")
        log.warning(f"Run {result.run_index}: no spare unit for {sid}, continuing on the residual array")
        return None
    threshold = (
        {c: config.uos.sr_threshold for c in state.reservoir.classes}
        if config.uos.sr_threshold is not None
        else None
    )
    session = RepairSession(sid, spare, threshold)
    begin_repair(state, session)
    result.episodes.add(t, BeginRepair(sid, spare))
    result.replicas[sid] = spare
    return session


def _run_adaptive(config: ExperimentConfig, plan: _RunPlan, result: RunResult) -> None:
    data = plan.dataset
    state = init(data.train, config.classifier, config.thresholds, data.sensor_map, plan.active)
    truth_by_index = dict(enumerate(result.truth))
    delay = config.uos.detection_delay

    detections: dict[int, list[FaultEvent]] = {}
    if config.mode == "sr":
        for e in plan.schedule:
            if e.permanent and e.action == "replace":
                detections.setdefault(e.start + delay, []).append(e)

    pending: list[FaultEvent] = []
    session: Optional[RepairSession] = None
    ever_active = list(plan.active)

    for t, x in enumerate(plan.X):
        _log_faults(result, plan.schedule, t)
        for e in detections.get(t, []):
            if session is not None:
                result.flags.append(f"overlapping-faults:{e.sensor}@{t}")
                log.warning(f"Run {result.run_index}: fault on {e.sensor} at {t} deferred, repair in progress")
            pending.append(e)
        while session is None and pending:
            session = _start_repair(config, plan, state, pending.pop(0), t, result)
            if session is not None:
                ever_active.append(session.replacement_id)

        if session is None:
            predicted = state.step(x, t).predicted
        else:
            predicted = observe(state, session, x, t)
            if session.status == "ready":
                result.episodes.add(t, Ready(session.removed_id, session.samples_observed))
                result.pool_mislabel.append(session.mislabel_fraction(truth_by_index))
                merge(state, session)
                result.episodes.add(
                    t, Merge(session.replacement_id, state.reservoir.columns.size, int(state.preselected.sum()))
                )
                session = None
        result.predicted.append(predicted)

    if session is not None:
        result.flags.append(f"repair-unfinished:{session.removed_id}")
    result.selected = state.log.selected_matrix()
    result.used = state.log.used_matrix()
    rates = selection_timeline(state).overall_rates()
    result.selection_rates = {s: rates[s] for s in ever_active}


def run_one(config: ExperimentConfig, run_index: int, source: Optional[Dataset] = None) -> RunResult:
    """
    One seeded run (seed = base seed XOR run index). A run that raises is
    returned with `failed` set and the error text; it is never dropped.
    """
    seed = config.runs.run_seed(run_index)
    result = RunResult(
        run_index=run_index,
        run_seed=seed,
        mode=config.mode,
        classifier=config.classifier.kind,
        fault_type=config.fault_type,
    )
    try:
        plan = _plan(config, seed, source)
        result.truth = plan.dataset.test.labels.tolist()
        result.sensor_map = plan.dataset.sensor_map
        result.resolved_faults = [e.to_dict() for e in plan.schedule]
        match config.mode:
            case "standard":
                _run_standard(config, plan, result)
            case "uos" | "sr":
                _run_adaptive(config, plan, result)
    except Exception as e:
        result.failed = True
        result.error = f"{type(e).__name__}: {e}"
        log.warning(f"Run {run_index} (seed {seed}) failed: {result.error}")
        return result

    if result.flagged:
        log.warning(f"Run {run_index} flagged: {result.flags}")
    log.debug(f"Run {run_index}: rate {result.rate:.4f}")
    return result


@dataclass
class ExperimentResult:
    results: list[RunResult]
    summary: SummaryStats


def run_experiment(
    config: ExperimentConfig, source: Optional[Dataset] = None, progress: bool = True
) -> ExperimentResult:
    """
    All `runs.n` runs, concurrently up to `runs.workers`, sorted by run index.

    Raises ExperimentAborted when fewer than 95% of the runs succeed.
    """
    if source is None:
        source = load_source(config)
    n = config.runs.n
    log.info(
        f"Experiment: mode {config.mode}, classifier {config.classifier.kind}, "
        f"faults {config.fault_type}, {n} runs, seed {config.runs.seed}"
    )

    work = partial(run_one, config, source=source)
    bar = partial(tqdm, total=n, desc=f"{config.mode}/{config.classifier.kind}", disable=not progress)
    if config.runs.workers > 1:
        with ProcessPoolExecutor(max_workers=config.runs.workers) as pool:
            results = list(bar(pool.map(work, range(n))))
    else:
        results = [work(i) for i in bar(range(n))]
    results.sort(key=lambda r: r.run_index)

    failed = [r for r in results if r.failed]
    needed = math.ceil(MIN_SUCCESS_FRACTION * n)
    if n - len(failed) < needed:
        raise ExperimentAborted(
            f"{len(failed)} of {n} runs failed (need {needed} successes); first error: {failed[0].error}"
        )

    summary = summarize(results)
    log.info(
        f"Experiment done: mean rate {summary.mean:.4f} +/- {summary.std:.4f}, "
        f"{len(failed)} failed, {summary.n_flagged} flagged"
    )
    return ExperimentResult(results, summary)
