"""
Reader for the gas-sensor drift batch files.

Each nonempty line:  <gas>;<concentration> <idx>:<value> <idx>:<value> ...
with idx running over 1..128 (16 sensors x 8 features).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from src.types.errors import MalformedLine, MissingFeatureIndex

log = logging.getLogger(__name__)

N_SENSORS = 16
FEATURES_PER_SENSOR = 8
N_FEATURES = N_SENSORS * FEATURES_PER_SENSOR

_BATCH_NUMBER = re.compile(r"(\d+)")


@dataclass(frozen=True)
class RawRecord:
    gas: int
    concentration: float
    features: np.ndarray
    source: str
    line: int

    @staticmethod
    def sensor_of(feature_index: int) -> int:
        """0-based sensor of a 1-based feature index."""
        return (feature_index - 1) // FEATURES_PER_SENSOR

    def to_line(self) -> str:
        values = " ".join(f"{i + 1}:{v!r}" for i, v in enumerate(self.features.tolist()))
        return f"{self.gas};{self.concentration!r} {values}"


def parse_line(text: str, source: str = "<string>", line: int = 0) -> RawRecord:
    where = f"{source}:{line}"
    head, _, rest = text.strip().partition(" ")
    gas_str, sep, conc_str = head.partition(";")
    if not sep:
        raise MalformedLine(f"{where}: expected '<gas>;<concentration>', got {head!r}")
    try:
        gas = int(gas_str)
        concentration = float(conc_str)
    except ValueError:
        raise MalformedLine(f"{where}: bad label {head!r}") from None

    values = np.full(N_FEATURES, np.nan)
    for token in rest.split():
        idx_str, sep, val_str = token.partition(":")
        if not sep:
            raise MalformedLine(f"{where}: expected '<idx>:<value>', got {token!r}")
        try:
            idx = int(idx_str)
            value = float(val_str)
        except ValueError:
            raise MalformedLine(f"{where}: bad pair {token!r}") from None
        if not 1 <= idx <= N_FEATURES:
            raise MalformedLine(f"{where}: feature index {idx} outside 1..{N_FEATURES}")
        values[idx - 1] = value

    missing = np.flatnonzero(np.isnan(values)) + 1
    if missing.size:
        raise MissingFeatureIndex(
            f"{where}: missing feature indices {missing[:10].tolist()}"
            + ("..." if missing.size > 10 else "")
        )
    return RawRecord(gas, concentration, values, source, line)


def batch_order(paths: Iterable[str | Path]) -> list[Path]:
    """Batch files in ascending batch number (chronological); unnumbered names last."""

    def key(p: Path):
        m = _BATCH_NUMBER.findall(p.stem)
        return (0, int(m[-1]), p.name) if m else (1, 0, p.name)

    return sorted((Path(p) for p in paths), key=key)


def parse_files(paths: Sequence[str | Path], permissive: bool = False) -> list[RawRecord]:
    """
    Records in chronological order. Malformed lines are fatal unless
    `permissive`, in which case they are logged with file and line and skipped.
    """
    files = batch_order(paths)
    if not files:
        log.warning("No dataset files given; nothing to parse")
        return []

    records: list[RawRecord] = []
    skipped = 0
    for path in files:
        with open(path, "r") as f:
            for lineno, text in enumerate(f, start=1):
                if not text.strip():
                    continue
                try:
                    records.append(parse_line(text, str(path), lineno))
                except (MalformedLine, MissingFeatureIndex) as e:
                    if not permissive:
                        raise
                    skipped += 1
                    log.warning(f"Skipping line: {e}")
    log.info(f"Parsed {len(records)} records from {len(files)} files ({skipped} skipped)")
    return records
