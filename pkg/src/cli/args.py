from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional

Command = Literal["gen-synth", "ingest", "run", "report", "replay"]


@dataclass
class CliInvocation:
    command: Command
    out: Path
    config: Optional[Path] = None
    # dotted key=value, applied after the config file
    overrides: list[str] = field(default_factory=list)
    workers: Optional[int] = None
    seed: Optional[int] = None
    # ingest: batch files or directories; report: results directories;
    # replay: the manifest (or the directory holding it)
    paths: list[Path] = field(default_factory=list)
    run_index: int = 0
    permissive: bool = False
    replicas: bool = False
    progress: bool = True

    def effective_overrides(self) -> list[str]:
        """--set values, then --seed/--workers mapped onto their config keys."""
        extra = []
        if self.seed is not None:
            extra.append(f"{'synth.seed' if self.command == 'gen-synth' else 'runs.seed'}={self.seed}")
        if self.workers is not None:
            extra.append(f"runs.workers={self.workers}")
        return list(self.overrides) + extra


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="Experiment config (TOML)")
    common.add_argument("--out", type=Path, required=True, help="Output directory")
    common.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a config value with a dotted key (repeatable)",
    )
    common.add_argument("--workers", type=int, default=None, help="Parallel runs")
    common.add_argument("--seed", type=int, default=None, help="Base seed (u64)")
    common.add_argument("--no-progress", action="store_true", help="Hide progress bars")

    parser = argparse.ArgumentParser(
        prog="sensorfix",
        description="Adaptive classification and self-repair of drifting sensor arrays",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-synth", parents=[common], help="Write the synthetic benchmark dataset")
    gen.add_argument("--replicas", action="store_true", help="Append one replica unit per sensor")

    ingest = sub.add_parser("ingest", parents=[common], help="Select the experimental subset from batch files")
    ingest.add_argument("paths", nargs="+", type=Path, help="Batch files or directories holding batch*.dat")
    ingest.add_argument("--permissive", action="store_true", help="Skip malformed lines instead of failing")

    sub.add_parser("run", parents=[common], help="Run a Monte Carlo experiment")

    report = sub.add_parser("report", parents=[common], help="Compare the results of finished experiments")
    report.add_argument("paths", nargs="+", type=Path, help="Results directories written by `run`")

    replay = sub.add_parser("replay", parents=[common], help="Reproduce one archived run")
    replay.add_argument("paths", nargs=1, type=Path, help="manifest.json of a `run`, or its directory")
    replay.add_argument("--run", dest="run_index", type=int, default=0, help="Run index to replay")
    return parser


def parse_args(argv: Optional[list[str]] = None) -> CliInvocation:
    args = build_parser().parse_args(argv)
    if args.seed is not None and args.seed < 0:
        build_parser().error("--seed must be non-negative")
    return CliInvocation(
        command=args.command,
        out=args.out,
        config=args.config,
        overrides=list(args.overrides),
        workers=args.workers,
        seed=args.seed,
        paths=list(getattr(args, "paths", [])),
        run_index=getattr(args, "run_index", 0),
        permissive=getattr(args, "permissive", False),
        replicas=getattr(args, "replicas", False),
        progress=not args.no_progress,
    )
