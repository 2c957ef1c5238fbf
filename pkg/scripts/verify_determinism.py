"""
verify_determinism.py

Runs the whole pipeline twice with the same config and root seed into two
scratch output directories and checks that the grid table, every cell result
and the pretrained parameters are byte-identical.

Usage:
    python scripts/verify_determinism.py [--config configs/desk.json] [--budget 5]
"""

import argparse
import filecmp
import logging
import sys
import tempfile
from pathlib import Path

# Add project root to path
sys.path.append(str(Path(__file__).parent.parent))

from src.cli.app import EXIT_OK, main

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)

COMMANDS = ("preprocess", "tune-activity", "pretrain", "grid", "report")


def run_once(config: Path, data_dir: Path, out: Path, budget: int) -> None:
    common = ["--config", str(config), "--data-dir", str(data_dir), "--output-dir", str(out)]
    for command in COMMANDS:
        extra = ["--budget", str(budget)] if command == "grid" else []
        code = main(common + [command] + extra)
        if code != EXIT_OK:
            raise RuntimeError(f"{command} exited with {code}")


def compared_files(out: Path) -> list[Path]:
    patterns = ["grid/table.csv", "grid/results/*.json", "pretrained/*.npz", "report/table.csv", "report/roc/*"]
    return sorted(p.relative_to(out) for pattern in patterns for p in out.glob(pattern))


def verify(config: Path, budget: int) -> bool:
    with tempfile.TemporaryDirectory(prefix="wristcast-") as scratch:
        root = Path(scratch)
        data_dir = root / "data"
        code = main(["--config", str(config), "--data-dir", str(data_dir), "--output-dir", str(root / "gen"), "generate"])
        if code != EXIT_OK:
            logger.error("generate exited with %d", code)
            return False

        first, second = root / "a", root / "b"
        for out in (first, second):
            logger.info("Pipeline run into %s", out)
            run_once(config, data_dir, out, budget)

        files = compared_files(first)
        if files != compared_files(second):
            logger.error("The two runs wrote different file sets")
            return False
        mismatched = [str(p) for p in files if not filecmp.cmp(first / p, second / p, shallow=False)]
        if mismatched:
            logger.error("Files differ between runs: %s", mismatched)
            return False
        logger.info("%d files identical across runs", len(files))
        return True


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Check that two identical pipeline runs agree byte for byte")
    parser.add_argument("--config", type=Path, default=Path("configs/desk.json"))
    parser.add_argument("--budget", type=int, default=5)
    args = parser.parse_args()
    sys.exit(0 if verify(args.config, args.budget) else 1)
