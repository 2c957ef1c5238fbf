"""wristcast command line.

Exit codes: 0 success, 1 invalid configuration or input validation,
2 data or runtime failure.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any

from dotenv import load_dotenv
from pydantic import ValidationError

from src import __version__
from src.cli import commands
from src.cli.manifest import RunManifest, write_manifest
from src.core.config import PipelineConfig, Settings, load_config
from src.core.exceptions import ConfigError, WristcastError
from src.core.logging import configure_logging
from src.trainflow.modes import MODE_ORDER, ApplicationMode
from src.windowing.config import LEAD_TIMES, WINDOW_LENGTHS

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wristcast", description="Stress event prediction experiments on E4 data")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, help="JSON config file (or a run manifest)")
    parser.add_argument("--data-dir", type=Path, help="session tree <subject>/week_<n>/")
    parser.add_argument("--output-dir", type=Path)
    parser.add_argument("--seed", type=int, dest="root_seed", help="root seed of every random substream")
    parser.add_argument("--workers", type=int, dest="n_workers", help="cells run concurrently per batch")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    sub = parser.add_subparsers(dest="command", required=True)

    generate = sub.add_parser("generate", help="write a synthetic cohort in the E4 layout")
    generate.add_argument("--subjects", type=int)
    generate.add_argument("--weeks", type=int)

    sub.add_parser("preprocess", help="filter, resample, window, standardize and undersample")
    sub.add_parser("tune-activity", help="fit the activity classifier on dance/relax baselines")
    sub.add_parser("pretrain", help="pretrain on the stand-in corpora, one parameter file per window length")

    run = sub.add_parser("run", help="run one grid cell")
    run.add_argument("--mode", required=True, choices=[mode.value for mode in MODE_ORDER])
    run.add_argument("--window-len", type=int, required=True, choices=WINDOW_LENGTHS)
    run.add_argument("--lead", type=int, required=True, choices=LEAD_TIMES)
    run.add_argument("--gate", action=argparse.BooleanOptionalAction, default=True)
    run.add_argument("--force", action="store_true", help="re-run a cell that is already done")

    grid = sub.add_parser("grid", help="run grid batches until done or out of budget")
    grid.add_argument("--budget", type=int, help="maximum number of cells emitted in total")

    sub.add_parser("report", help="export the results table and ROC figures")
    sub.add_parser("explore", help="summary statistics and histograms of the cohort")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    overrides: dict[str, Any] = {
        "data_dir": args.data_dir,
        "output_dir": args.output_dir,
        "root_seed": args.root_seed,
        "n_workers": args.n_workers,
        "log_level": args.log_level,
    }
    if args.command == "generate":
        overrides["generate"] = {"n_subjects": args.subjects, "weeks_per_subject": args.weeks}
    if args.command == "grid":
        overrides["grid"] = {"budget": args.budget}
    return overrides


def _parameters(args: argparse.Namespace) -> dict[str, Any]:
    skip = {"config", "data_dir", "output_dir", "root_seed", "n_workers", "log_level", "command"}
    return {key: value for key, value in sorted(vars(args).items()) if key not in skip}


def dispatch(args: argparse.Namespace, cfg: PipelineConfig) -> None:
    match args.command:
        case "generate":
            commands.cmd_generate(cfg)
        case "preprocess":
            commands.cmd_preprocess(cfg)
        case "tune-activity":
            commands.cmd_tune_activity(cfg)
        case "pretrain":
            commands.cmd_pretrain(cfg)
        case "run":
            commands.cmd_run(
                cfg, ApplicationMode(args.mode), args.window_len, args.lead, args.gate, force=args.force
            )
        case "grid":
            commands.cmd_grid(cfg)
        case "report":
            commands.cmd_report(cfg)
        case "explore":
            commands.cmd_explore(cfg)
        case _:
            raise ConfigError(f"Unknown command: {args.command}")


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or "INFO")

    try:
        settings = Settings()
        cfg = load_config(args.config, settings, _overrides(args))
        configure_logging(cfg.log_level)
        write_manifest(RunManifest.build(args.command, cfg, args.config or settings.config_path, _parameters(args)))
        dispatch(args, cfg)
    except (ConfigError, ValidationError) as e:
        logger.error("%s: %s", args.command, e)
        return EXIT_VALIDATION
    except (WristcastError, OSError) as e:
        logger.error("%s: %s", args.command, e)
        return EXIT_RUNTIME
    except ValueError as e:
        logger.error("%s: invalid data: %s", args.command, e)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
