"""
manifest.json: merged config, seeds and the sha256 of every artifact and input.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import asdict, dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Iterable

from src.types.errors import ChecksumMismatch

log = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.json"


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def package_version() -> str:
    try:
        return version("sensorfix")
    except PackageNotFoundError:
        return "0+unknown"


@dataclass
class Manifest:
    command: str
    config: dict[str, Any] = field(default_factory=dict)
    config_hash: str = ""
    seeds: dict[str, Any] = field(default_factory=dict)
    # path relative to the manifest's directory -> sha256
    artifacts: dict[str, str] = field(default_factory=dict)
    # path as given on the command line -> sha256
    inputs: dict[str, str] = field(default_factory=dict)
    version: str = field(default_factory=package_version)

    def add_artifacts(self, root: Path, paths: Iterable[Path]) -> None:
        for p in paths:
            self.artifacts[Path(p).relative_to(root).as_posix()] = sha256_file(p)

    def add_inputs(self, paths: Iterable[Path]) -> None:
        for p in paths:
            self.inputs[str(p)] = sha256_file(p)

    def write(self, out_dir: str | Path) -> Path:
        path = Path(out_dir) / MANIFEST_FILE
        with open(path, "w") as f:
            json.dump(asdict(self), f, indent=2, sort_keys=True)
        log.info(f"Wrote {path} ({len(self.artifacts)} artifacts, {len(self.inputs)} inputs)")
        return path

    @staticmethod
    def load(path: str | Path) -> "Manifest":
        path = Path(path)
        if path.is_dir():
            path = path / MANIFEST_FILE
        with open(path, "r") as f:
            return Manifest(**json.load(f))

    def verify(self, root: str | Path) -> None:
        """Every artifact under `root` and every input still matches its checksum."""
        root = Path(root)
        files = [(root / rel, digest) for rel, digest in self.artifacts.items()]
        files += [(Path(p), digest) for p, digest in self.inputs.items()]
        for path, digest in files:
            if not path.is_file():
                raise ChecksumMismatch(f"{path} is missing")
            if sha256_file(path) != digest:
                raise ChecksumMismatch(f"{path} changed since the manifest was written")
        log.debug(f"Verified {len(files)} checksums under {root}")
