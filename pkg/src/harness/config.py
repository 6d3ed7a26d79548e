"""
Experiment configuration: TOML file + dotted `--set` overrides -> ExperimentConfig.
"""

from __future__ import annotations

import copy
import hashlib
import json
import tomllib
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Literal, Optional, Sequence

from src.classifiers import ClassifierSpec
from src.ingest import SubsetSpec
from src.numerics import SelectionThresholds
from src.synth import SynthConfig
from src.types.errors import ConfigError

from .faults import FaultEvent, FaultPreset

Mode = Literal["standard", "uos", "sr"]
MODES = ("standard", "uos", "sr")

# Named synthetic profiles; `synth.*` keys are applied on top.
SYNTH_PROFILES: dict[str, dict[str, Any]] = {
    "default": {},
    "stationary": {"drift_rate": 0.0},
}


def cast_scalar(s: str) -> Any:
    """
    Best-effort scalar casting for command-line values:
      - "true"/"false" -> bool
      - ints -> int
      - floats -> float
      - "none" -> None
      - else -> str
    """
    t = s.strip()
    if t.lower() == "true":
        return True
    if t.lower() == "false":
        return False
    if t.lower() == "none":
        return None
    if t and t.lstrip("-").isdigit():
        return int(t)
    try:
        if t and any(c in t for c in [".", "e", "E", "inf", "nan"]):
            return float(t)
    except ValueError:
        pass
    return s


def apply_override(d: dict[str, Any], assignment: str) -> None:
    """Apply one `a.b.c=value` assignment in place; numeric parts index lists."""
    key, sep, raw = assignment.partition("=")
    if not sep or not key.strip():
        raise ConfigError(f"Override must look like key=value, got {assignment!r}")
    parts = key.strip().split(".")
    node: Any = d
    for part in parts[:-1]:
        if isinstance(node, list):
            try:
                node = node[int(part)]
            except (ValueError, IndexError):
                raise ConfigError(f"Bad list index {part!r} in override {key!r}") from None
        else:
            node = node.setdefault(part, {})
            if not isinstance(node, (dict, list)):
                raise ConfigError(f"Override {key!r} descends into scalar {part!r}")
    last = parts[-1]
    if isinstance(node, list):
        try:
            node[int(last)] = cast_scalar(raw)
        except (ValueError, IndexError):
            raise ConfigError(f"Bad list index {last!r} in override {key!r}") from None
    else:
        node[last] = cast_scalar(raw)


def merge_overrides(d: dict[str, Any], overrides: list[str]) -> dict[str, Any]:
    merged = copy.deepcopy(d)
    for assignment in overrides:
        apply_override(merged, assignment)
    return merged


def load_toml(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{path}: {e}") from None


def canonical_json(d: dict[str, Any]) -> str:
    return json.dumps(d, sort_keys=True, separators=(",", ":"), default=str)


def config_hash(d: dict[str, Any]) -> str:
    return hashlib.sha256(canonical_json(d).encode()).hexdigest()


@dataclass(frozen=True)
class DatasetSource:
    source: Literal["synthetic", "ingested"] = "synthetic"
    # ingested: a dataset directory (train.csv/test.csv/dataset.json) or a
    # directory of raw batch files
    path: Optional[str] = None
    profile: str = "default"

    def __post_init__(self):
        if self.source not in ("synthetic", "ingested"):
            raise ConfigError(f"Unknown dataset source {self.source!r}")
        if self.source == "ingested" and not self.path:
            raise ConfigError("dataset.path is required for an ingested source")
        if self.source == "synthetic" and self.profile not in SYNTH_PROFILES:
            raise ConfigError(f"Unknown synthetic profile {self.profile!r}; known: {list(SYNTH_PROFILES)}")


@dataclass(frozen=True)
class RunsConfig:
    n: int = 100
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError(f"runs.n must be >= 1, got {self.n}")
        if self.seed < 0:
            raise ConfigError(f"runs.seed must be non-negative, got {self.seed}")
        if self.workers < 1:
            raise ConfigError(f"runs.workers must be >= 1, got {self.workers}")

    def run_seed(self, run_index: int) -> int:
        return self.seed ^ run_index


@dataclass(frozen=True)
class UosOptions:
    window: int = 30
    detection_delay: int = 0
    # per-class SR pool threshold; None -> reservoir capacity
    sr_threshold: Optional[int] = None

    def __post_init__(self):
        if self.window < 1:
            raise ConfigError("uos.window must be >= 1")
        if self.detection_delay < 0:
            raise ConfigError("uos.detection_delay must be >= 0")
        if self.sr_threshold is not None and self.sr_threshold < 1:
            raise ConfigError("uos.sr_threshold must be >= 1")


@dataclass(frozen=True)
class ReportOptions:
    # run indices whose selection timeline is written
    timeline_runs: tuple[int, ...] = (0,)


@dataclass(frozen=True)
class ExperimentConfig:
    mode: Mode = "uos"
    dataset: DatasetSource = field(default_factory=DatasetSource)
    classifier: ClassifierSpec = field(default_factory=ClassifierSpec)
    thresholds: SelectionThresholds = field(default_factory=SelectionThresholds)
    faults: tuple[FaultEvent, ...] = ()
    fault_preset: Optional[FaultPreset] = None
    runs: RunsConfig = field(default_factory=RunsConfig)
    uos: UosOptions = field(default_factory=UosOptions)
    synth: SynthConfig = field(default_factory=SynthConfig)
    subset: SubsetSpec = field(default_factory=SubsetSpec)
    report: ReportOptions = field(default_factory=ReportOptions)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"Unknown mode {self.mode!r}; expected one of {MODES}")
        if self.faults and self.fault_preset is not None:
            raise ConfigError("Give either faults[] or fault_preset, not both")

    def schedule(self) -> list[FaultEvent]:
        """Unresolved fault schedule: explicit events, else the preset's."""
        if self.fault_preset is not None:
            return self.fault_preset.events()
        return list(self.faults)

    @property
    def fault_type(self) -> str:
        types = sorted({e.fault_type for e in self.schedule()})
        return "+".join(types) if types else "none"

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "ExperimentConfig":
        known = {
            "mode", "dataset", "classifier", "thresholds", "faults", "fault_preset",
            "runs", "uos", "synth", "subset", "report",
        }
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"Unknown config sections: {sorted(unknown)}")

        def section(name: str) -> dict[str, Any]:
            value = d.get(name, {})
            if not isinstance(value, dict):
                raise ConfigError(f"[{name}] must be a table")
            return value

        try:
            profile = section("dataset").get("profile", "default")
            synth = SYNTH_PROFILES.get(profile, {}) | section("synth")
            th = section("thresholds")
            thresholds = SelectionThresholds(
                thresh1=float(th.get("t1", 0.005)),
                thresh2=float(th.get("t2", 5.0)),
                thresh3=float(th.get("t3", 0.1)),
                membership=th.get("membership", "tail"),
            )
            report = section("report")
            return ExperimentConfig(
                mode=d.get("mode", "uos"),
                dataset=DatasetSource(**section("dataset")),
                classifier=ClassifierSpec(**section("classifier")),
                thresholds=thresholds,
                faults=tuple(FaultEvent.from_dict(e) for e in d.get("faults", [])),
                fault_preset=FaultPreset(**d["fault_preset"]) if "fault_preset" in d else None,
                runs=RunsConfig(**section("runs")),
                uos=UosOptions(**section("uos")),
                synth=SynthConfig.from_dict(synth),
                subset=SubsetSpec.from_dict(section("subset")),
                report=ReportOptions(tuple(int(i) for i in report.get("timeline_runs", (0,)))),
            )
        except ConfigError:
            raise
        except (TypeError, ValueError, KeyError) as e:
            raise ConfigError(f"Bad experiment config: {e}") from None

    def to_dict(self) -> dict[str, Any]:
        """Plain-JSON view of the resolved config (what the manifest stores)."""
        th = self.thresholds
        d: dict[str, Any] = {
            "mode": self.mode,
            "dataset": asdict(self.dataset),
            "classifier": asdict(self.classifier),
            "thresholds": {"t1": th.thresh1, "t2": th.thresh2, "t3": th.thresh3, "membership": th.membership},
            "faults": [e.to_dict() for e in self.faults],
            "runs": asdict(self.runs),
            "uos": asdict(self.uos),
            "synth": self.synth.to_dict(),
            "subset": {
                "gases": [asdict(g) for g in self.subset.gases],
                "train": self.subset.train,
                "test": self.subset.test,
                "gas_names": {str(k): v for k, v in self.subset.gas_names.items()},
                "sensor_models": list(self.subset.sensor_models),
            },
            "report": {"timeline_runs": list(self.report.timeline_runs)},
        }
        if self.fault_preset is not None:
            d["fault_preset"] = asdict(self.fault_preset)
        return d

    def hash(self) -> str:
        return config_hash(self.to_dict())

    @staticmethod
    def load(path: Optional[str | Path], overrides: Sequence[str] = ()) -> "ExperimentConfig":
        raw = load_toml(path) if path else {}
        return ExperimentConfig.from_dict(merge_overrides(raw, list(overrides)))
