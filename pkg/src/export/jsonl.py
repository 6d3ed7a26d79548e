from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

from src.types import RunResult
from src.types.errors import UnknownRun


def runs_to_jsonl(results: Sequence[RunResult], *, config_hash: str = "") -> str:
    """
    Export run records to a JSONL string (one JSON object per run), sorted by
    run index. Each record carries the config hash so it can be matched to
    its manifest.
    """
    lines = []
    for r in sorted(results, key=lambda r: r.run_index):
        rec = {"config_hash": config_hash, **r.to_record()}
        lines.append(json.dumps(rec, ensure_ascii=False, sort_keys=True))
    return "\n".join(lines)


def runs_from_jsonl(text: str) -> list[dict[str, Any]]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def write_runs(path: str | Path, results: Sequence[RunResult], *, config_hash: str = "") -> Path:
    path = Path(path)
    path.write_text(runs_to_jsonl(results, config_hash=config_hash) + "\n")
    return path


def read_runs(path: str | Path) -> list[dict[str, Any]]:
    return runs_from_jsonl(Path(path).read_text())


def record_of(records: Sequence[dict[str, Any]], run_index: int) -> dict[str, Any]:
    for rec in records:
        if rec["run_index"] == run_index:
            return rec
    raise UnknownRun(f"No run {run_index} among {len(records)} archived records")


def normalized(record: dict[str, Any]) -> dict[str, Any]:
    """A record as it reads back from JSON (tuples -> lists, etc.)."""
    return json.loads(json.dumps(record, ensure_ascii=False, sort_keys=True))
