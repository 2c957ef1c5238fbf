"""
CLI Module - Command-line entry point

Contains:
- app.py: argparse parser, config resolution and exit-code mapping
- commands.py: generate, preprocess, tune-activity, pretrain, run, grid, report, explore
- manifest.py: RunManifest written before a command computes anything
"""
from .app import build_parser, main
from .manifest import RunManifest, read_manifest, write_manifest

__all__ = ["build_parser", "main", "RunManifest", "read_manifest", "write_manifest"]
