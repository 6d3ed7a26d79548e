"""
One function per subcommand. Each writes its outputs plus a manifest under
the output directory and never touches its inputs.
"""

from __future__ import annotations

import itertools
import json
import logging
from pathlib import Path

import pandas as pd

from src.display.text import format_table, print_section
from src.export import BOXPLOT_FILE, RATES_FILE, normalized, read_runs, record_of, write_reports, write_runs
from src.harness import ExperimentConfig, SummaryStats, compare_modes, load_source, run_experiment, run_one
from src.ingest import parse_files, select_subset
from src.persist.load import dataset_files, is_dataset_dir
from src.persist.save import to_dir
from src.synth import generate, with_replicas
from src.types import Dataset
from src.types.errors import ReplayMismatch

from .args import CliInvocation
from .manifest import MANIFEST_FILE, Manifest

log = logging.getLogger(__name__)

RUNS_FILE = "runs.jsonl"
REPORT_FILE = "report.csv"
COMPARISONS_FILE = "comparisons.csv"
REPORT_TEXT = "report.txt"
COMPARISON_COLUMNS = ["a", "b", "pairs", "mean_diff", "statistic", "p_value", "significant", "verdict"]


def _config(inv: CliInvocation) -> ExperimentConfig:
    return ExperimentConfig.load(inv.config, inv.effective_overrides())


def _expand(paths: list[Path], pattern: str) -> list[Path]:
    out = []
    for p in paths:
        out.extend(sorted(p.glob(pattern)) if p.is_dir() else [p])
    return out


def gen_synth(inv: CliInvocation) -> Manifest:
    cfg = _config(inv)
    synth = generate(cfg.synth)
    if inv.replicas:
        synth = with_replicas(synth, seed=cfg.synth.seed)
    written = to_dir(synth.to_dataset(), inv.out)

    manifest = Manifest("gen-synth", cfg.to_dict(), cfg.hash(), {"synth": cfg.synth.seed})
    manifest.add_artifacts(inv.out, written)
    return manifest


def ingest(inv: CliInvocation) -> Manifest:
    cfg = _config(inv)
    files = _expand(inv.paths, "batch*.dat")
    train, test, smap = select_subset(parse_files(files, permissive=inv.permissive), cfg.subset)
    meta = {"source": "ingested", "files": [str(f) for f in files]}
    written = to_dir(Dataset(train, test, smap, meta), inv.out)

    manifest = Manifest("ingest", cfg.to_dict(), cfg.hash())
    manifest.add_artifacts(inv.out, written)
    manifest.add_inputs(files)
    return manifest


def _source_files(cfg: ExperimentConfig) -> list[Path]:
    if cfg.dataset.source == "synthetic":
        return []
    path = Path(cfg.dataset.path)
    if is_dataset_dir(path):
        return dataset_files(path)
    return _expand([path], "batch*.dat")


def run(inv: CliInvocation) -> Manifest:
    cfg = _config(inv)
    inputs = _source_files(cfg)
    exp = run_experiment(cfg, progress=inv.progress)

    inv.out.mkdir(parents=True, exist_ok=True)
    written = [write_runs(inv.out / RUNS_FILE, exp.results, config_hash=cfg.hash())]
    written += write_reports(
        inv.out,
        exp.results,
        [exp.summary],
        config_hash=cfg.hash(),
        base_seed=cfg.runs.seed,
        timeline_runs=cfg.report.timeline_runs,
    )

    seeds = {"base": cfg.runs.seed, "runs": [r.run_seed for r in exp.results]}
    manifest = Manifest("run", cfg.to_dict(), cfg.hash(), seeds)
    manifest.add_artifacts(inv.out, written)
    manifest.add_inputs(inputs)

    s = exp.summary
    print_section(
        "summary",
        format_table([s.box_row() | {"failed": s.n_failed, "flagged": s.n_flagged}]),
    )
    return manifest


def _load_groups(dirs: list[Path]) -> dict[tuple[str, str, str], SummaryStats]:
    groups: dict[tuple[str, str, str], SummaryStats] = {}
    for d in dirs:
        rates = pd.read_csv(d / RATES_FILE)
        for key, df in rates.groupby(["mode", "classifier", "fault_type"], sort=True):
            ok = df[df["failed"] == 0]
            flagged = int(ok["flags"].fillna("").astype(str).str.len().gt(0).sum())
            stats = SummaryStats.from_rates(
                *key,
                rates={int(s): float(r) for s, r in zip(ok["run_seed"], ok["rate"])},
                n_failed=int((df["failed"] != 0).sum()),
                n_flagged=flagged,
            )
            if key in groups:
                log.warning(f"{key} appears in more than one results directory; keeping {d}")
            groups[key] = stats
    return groups


def report(inv: CliInvocation) -> Manifest:
    groups = _load_groups(inv.paths)
    rows = [s.box_row() | {"failed": s.n_failed, "flagged": s.n_flagged} for s in groups.values()]

    comparisons = []
    for (ka, a), (kb, b) in itertools.combinations(groups.items(), 2):
        # same classifier and fault type, different mode
        if ka[1:] != kb[1:] or ka[0] == kb[0] or not set(a.rates) & set(b.rates):
            continue
        c = compare_modes(a, b)
        comparisons.append(
            {
                "a": c.a,
                "b": c.b,
                "pairs": c.n_pairs,
                "mean_diff": c.mean_diff,
                "statistic": c.statistic,
                "p_value": c.p_value,
                "significant": c.significant,
                "verdict": c.verdict,
            }
        )

    inv.out.mkdir(parents=True, exist_ok=True)
    text = format_table(rows)
    if comparisons:
        text += "\n" + format_table(comparisons)
    written = [inv.out / REPORT_FILE, inv.out / COMPARISONS_FILE, inv.out / REPORT_TEXT]
    pd.DataFrame(rows).to_csv(written[0], index=False)
    pd.DataFrame(comparisons, columns=COMPARISON_COLUMNS).to_csv(written[1], index=False)
    written[2].write_text(text)

    print_section("classification rates", format_table(rows))
    if comparisons:
        print_section("paired comparisons", format_table(comparisons))

    manifest = Manifest("report")
    manifest.add_artifacts(inv.out, written)
    manifest.add_inputs(d / name for d in inv.paths for name in (RATES_FILE, BOXPLOT_FILE) if (d / name).is_file())
    return manifest


def replay(inv: CliInvocation) -> Manifest:
    target = inv.paths[0]
    root = target if target.is_dir() else target.parent
    archived = Manifest.load(target)
    archived.verify(root)

    cfg = ExperimentConfig.from_dict(archived.config)
    if cfg.hash() != archived.config_hash:
        raise ReplayMismatch(f"Config in {root / MANIFEST_FILE} does not hash to {archived.config_hash}")

    expected = record_of(read_runs(root / RUNS_FILE), inv.run_index)
    result = run_one(cfg, inv.run_index, load_source(cfg))
    got = normalized({"config_hash": archived.config_hash, **result.to_record()})
    if got != expected:
        diff = sorted(k for k in expected if got.get(k) != expected[k])
        raise ReplayMismatch(f"Run {inv.run_index} diverged from its record in fields {diff}")

    inv.out.mkdir(parents=True, exist_ok=True)
    path = inv.out / f"replay_run{inv.run_index}.json"
    with open(path, "w") as f:
        json.dump(got, f, indent=2, sort_keys=True)
    print(f"run {inv.run_index} (seed {result.run_seed}): rate {result.rate:.4f}, identical to the archived record")

    manifest = Manifest("replay", archived.config, archived.config_hash, {"run": result.run_seed})
    manifest.add_artifacts(inv.out, [path])
    manifest.add_inputs([root / MANIFEST_FILE])
    return manifest


COMMANDS = {
    "gen-synth": gen_synth,
    "ingest": ingest,
    "run": run,
    "report": report,
    "replay": replay,
}


def dispatch(inv: CliInvocation) -> Path:
    """Run the subcommand and write its manifest; returns the manifest path."""
    manifest = COMMANDS[inv.command](inv)
    inv.out.mkdir(parents=True, exist_ok=True)
    return manifest.write(inv.out)
