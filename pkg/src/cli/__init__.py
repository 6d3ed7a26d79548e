"""
Command line: gen-synth, ingest, run, report, replay.
"""

from .args import CliInvocation, build_parser, parse_args
from .commands import COMMANDS, dispatch
from .manifest import MANIFEST_FILE, Manifest, sha256_file

__all__ = [
    "CliInvocation",
    "build_parser",
    "parse_args",
    "COMMANDS",
    "dispatch",
    "MANIFEST_FILE",
    "Manifest",
    "sha256_file",
]
