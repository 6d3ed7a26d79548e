"""
Summary statistics over runs and the paired comparison of two modes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.stats import wilcoxon

from src.types import RunResult

log = logging.getLogger(__name__)

ALPHA = 0.05


@dataclass
class SummaryStats:
    mode: str
    classifier: str
    fault_type: str
    n: int
    n_failed: int
    n_flagged: int
    mean: float
    std: float
    min: float
    q1: float
    median: float
    q3: float
    max: float
    # run seed -> rate, successful runs only; pairs runs across modes
    rates: dict[int, float] = field(default_factory=dict)
    # sensor id -> mean over runs of its overall selection rate
    selection_rates: dict[str, float] = field(default_factory=dict)
    sr_durations: list[int] = field(default_factory=list)

    def box_row(self) -> dict:
        return {
            "mode": self.mode,
            "classifier": self.classifier,
            "fault_type": self.fault_type,
            "n": self.n,
            "mean": self.mean,
            "std": self.std,
            "min": self.min,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "max": self.max,
        }

    @staticmethod
    def from_rates(
        mode: str,
        classifier: str,
        fault_type: str,
        rates: dict[int, float],
        n_failed: int = 0,
        n_flagged: int = 0,
    ) -> "SummaryStats":
        """Rebuild from archived per-run rates (seed -> rate)."""
        return SummaryStats(
            mode=mode,
            classifier=classifier,
            fault_type=fault_type,
            n=len(rates),
            n_failed=n_failed,
            n_flagged=n_flagged,
            **box_stats(list(rates.values())),
            rates=dict(rates),
        )


def box_stats(values: Sequence[float]) -> dict[str, float]:
    """mean, std (n - 1 degrees of freedom), min, quartiles, max."""
    v = np.asarray(values, dtype=float)
    if not v.size:
        return dict.fromkeys(["mean", "std", "min", "q1", "median", "q3", "max"], float("nan"))
    q1, median, q3 = np.percentile(v, [25, 50, 75])
    return {
        "mean": float(v.mean()),
        "std": float(v.std(ddof=1)) if v.size > 1 else 0.0,
        "min": float(v.min()),
        "q1": float(q1),
        "median": float(median),
        "q3": float(q3),
        "max": float(v.max()),
    }


def summarize(results: Sequence[RunResult]) -> SummaryStats:
    """
    Box-plot statistics of the classification rate over successful runs,
    plus selection-rate aggregates.
    """
    if not results:
        raise ValueError("Nothing to summarize")
    ok = [r for r in results if not r.failed]

    per_sensor: dict[str, list[float]] = {}
    for r in ok:
        for sid, v in r.selection_rates.items():
            per_sensor.setdefault(sid, []).append(v)

    first = results[0]
    return SummaryStats(
        mode=first.mode,
        classifier=first.classifier,
        fault_type=first.fault_type,
        n=len(ok),
        n_failed=len(results) - len(ok),
        n_flagged=sum(r.flagged for r in ok),
        **box_stats([r.rate for r in ok]),
        rates={r.run_seed: r.rate for r in ok},
        selection_rates={s: float(np.mean(v)) for s, v in sorted(per_sensor.items())},
        sr_durations=[d for r in ok for d in r.episodes.sr_durations()],
    )


@dataclass
class Comparison:
    a: str
    b: str
    n_pairs: int
    # mean of (a - b) over shared seeds
    mean_diff: float
    statistic: float
    p_value: float
    alpha: float = ALPHA

    @property
    def significant(self) -> bool:
        return self.p_value < self.alpha

    @property
    def verdict(self) -> str:
        if not self.significant:
            return "no significant difference"
        return f"{self.a} higher" if self.mean_diff > 0 else f"{self.b} higher"


def label(stats: SummaryStats) -> str:
    return f"{stats.mode}/{stats.classifier}/{stats.fault_type}"


def compare_modes(a: SummaryStats, b: SummaryStats, alpha: float = ALPHA) -> Comparison:
    """
    Wilcoxon signed-rank test on the per-seed rate differences. Runs are
    paired through their seeds, so both sides saw the same data realizations.
    """
    seeds = sorted(set(a.rates) & set(b.rates))
    if not seeds:
        raise ValueError(f"{label(a)} and {label(b)} share no run seeds")
    ra = np.array([a.rates[s] for s in seeds])
    rb = np.array([b.rates[s] for s in seeds])
    diff = ra - rb
    if not np.any(diff):
        statistic, p_value = 0.0, 1.0
    else:
        res = wilcoxon(ra, rb)
        statistic, p_value = float(res.statistic), float(res.pvalue)

    cmp = Comparison(label(a), label(b), len(seeds), float(diff.mean()), statistic, p_value, alpha)
    log.info(f"{cmp.a} vs {cmp.b}: diff {cmp.mean_diff:+.4f}, p {cmp.p_value:.3g} -> {cmp.verdict}")
    return cmp
