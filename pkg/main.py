#!/usr/bin/env python3
"""
Wristcast - Entry Point
=======================

Stress/OCD event prediction experiments on Empatica E4 wristband data:
synthetic cohorts, preprocessing, activity gating, pretraining and the
120-cell grid of window length x activity gate x application mode x lead time.

Run with:
    python main.py generate
    python main.py --config configs/desk.json grid --budget 25
    python main.py report

Every command writes a manifest to <output_dir>/manifests/ before it starts.
Settings can also come from WRISTCAST_* environment variables or a .env file.
"""
import sys

from src.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
