"""Command implementations. Each one is a thin wrapper over a slice entry point."""
import json
import logging
from collections import defaultdict
from pathlib import Path

from src.activity.baseline import cohort_baseline_windows
from src.activity.model import ActivityModel, baseline_score, load_model, save_model, tune
from src.core.config import PipelineConfig
from src.core.exceptions import ConfigError, InsufficientDataError
from src.core.seeds import derive_seed
from src.dsp.pipeline import preprocess_sessions
from src.e4.explore import plot_histograms, summarize_sessions
from src.e4.reader import read_cohort, write_cohort
from src.e4.synthetic import generate_cohort
from src.grid.coordinator import run_grid
from src.grid.runner import CellRunner
from src.grid.scheduler import record, reopen
from src.grid.state import Condition, GridCell, GridState
from src.grid.table import export_table
from src.metrics.plotting import export_roc_csv, plot_roc_svg
from src.nn.storage import save_params
from src.persistence.grid_store import GridStore, write_atomic
from src.trainflow.corpora import build_standin_corpora
from src.trainflow.modes import ApplicationMode
from src.trainflow.pretrain import params_filename, pretrain
from src.trainflow.run import RunResult
from src.windowing.balance import standardize_all, undersample
from src.windowing.config import WindowConfig
from src.windowing.dump import write_dataset
from src.windowing.extract import extract_windows

logger = logging.getLogger(__name__)

ACTIVITY_MODEL_FILE = "activity_model.json"


def grid_store(cfg: PipelineConfig) -> GridStore:
    return GridStore(cfg.output_dir / "grid")


def pretrained_dir(cfg: PipelineConfig) -> Path:
    return cfg.output_dir / "pretrained"


def dataset_path(cfg: PipelineConfig, window: WindowConfig) -> Path:
    name = f"w{window.window_len_s}_r{window.target_rate_hz}_lead{window.lead_time_s}.csv"
    return cfg.output_dir / "datasets" / name


def stored_activity_model(cfg: PipelineConfig) -> ActivityModel | None:
    path = cfg.activity.model_path or cfg.output_dir / ACTIVITY_MODEL_FILE
    if path.exists():
        return load_model(path)
    if cfg.activity.model_path is not None:
        raise ConfigError(f"activity model file not found: {path}")
    return None


def cmd_generate(cfg: PipelineConfig) -> list[Path]:
    """The cohort seed is derived from the root seed, never taken from the generate section."""
    synthetic = cfg.generate.model_copy(update={"seed": derive_seed(cfg.root_seed, "generator")})
    sessions = generate_cohort(synthetic)
    directories = write_cohort(sessions, cfg.data_dir)
    logger.info("Generated %d session directories under %s", len(directories), cfg.data_dir)
    return directories


def cmd_preprocess(cfg: PipelineConfig) -> list[Path]:
    sessions = read_cohort(cfg.data_dir)
    written = []
    for rate in cfg.preprocess.target_rates:
        processed = preprocess_sessions(sessions, rate)
        for window_len_s in cfg.preprocess.window_lengths:
            for lead_time_s in cfg.preprocess.lead_times:
                window = WindowConfig(
                    window_len_s=window_len_s, lead_time_s=lead_time_s, target_rate_hz=rate, seed=cfg.root_seed
                )
                windows = extract_windows(processed, window)
                if not windows.events:
                    raise InsufficientDataError(
                        f"no event windows for window={window_len_s}s lead={lead_time_s}s rate={rate}Hz"
                    )
                examples = standardize_all(windows.events + windows.nonevents)
                kept = undersample(examples, cfg.root_seed, "preprocess", window_len_s, rate, lead_time_s)
                written.append(write_dataset(kept, dataset_path(cfg, window)))
    logger.info("Wrote %d datasets", len(written))
    return written


def cmd_tune_activity(cfg: PipelineConfig) -> ActivityModel:
    sessions = read_cohort(cfg.data_dir)
    windows = cohort_baseline_windows(sessions, cfg.activity.window_len_s)
    model = tune(windows)
    score = baseline_score(windows, model)
    path = save_model(model, cfg.activity.model_path or cfg.output_dir / ACTIVITY_MODEL_FILE)
    logger.info(
        "Activity model %s threshold=%.6g balanced_accuracy=%.3f -> %s",
        model.method.value,
        model.threshold,
        score,
        path,
    )
    return model


def cmd_pretrain(cfg: PipelineConfig) -> list[Path]:
    corpora = build_standin_corpora(cfg.pretrain, cfg.root_seed)
    rate = cfg.run.target_rate_hz
    written = []
    for window_len_s in cfg.preprocess.window_lengths:
        result = pretrain(
            corpora,
            cfg.pretrain,
            window_len_s=window_len_s,
            target_rate_hz=rate,
            root_seed=cfg.root_seed,
            architecture=cfg.run.architecture,
        )
        path = save_params(result.params, pretrained_dir(cfg) / params_filename(window_len_s, rate))
        folds = [fold.model_dump(mode="json") for fold in result.folds]
        write_atomic(path.with_suffix(".folds.json"), json.dumps(folds, indent=2) + "\n")
        logger.info("Pretrained parameters for %ds windows -> %s", window_len_s, path)
        written.append(path)
    return written


def _runner(cfg: PipelineConfig) -> CellRunner:
    return CellRunner(read_cohort(cfg.data_dir), cfg, pretrained_dir(cfg), stored_activity_model(cfg))


def cmd_run(
    cfg: PipelineConfig,
    mode: ApplicationMode,
    window_len_s: int,
    lead_time_s: int,
    activity_gate: bool,
    force: bool = False,
) -> RunResult:
    """Run a single grid cell and record it in the persisted grid."""
    store = grid_store(cfg)
    state = store.load_or_create(cfg.grid.budget)
    condition = Condition(window_len_s=window_len_s, activity_gate=activity_gate)
    key = GridCell(condition=condition, mode=mode, lead_time_s=lead_time_s).key
    cell = state.cell(key)
    if cell.status == "done":
        if not force:
            raise ConfigError(f"cell {cell.slug} is already done (pass --force to re-run it)")
        state = reopen(state, key)
        cell = state.cell(key)

    result = _runner(cfg)(cell)
    store.save_result(cell, result)
    state = record(state, cell, result)
    store.save(state)
    logger.info("cell=%s f1=%.4f auc=%s", cell.slug, result.report.f1_mean, result.report.auc)
    return result


def cmd_grid(cfg: PipelineConfig, budget: int | None = None) -> GridState:
    store = grid_store(cfg)
    state = store.load_or_create(budget if budget is not None else cfg.grid.budget)
    state = run_grid(state, _runner(cfg), store, cfg.n_workers)
    export_table(state, store.root / "table.csv")
    return state


def cmd_report(cfg: PipelineConfig) -> Path:
    """Results table plus ROC curves of every finished cell."""
    store = grid_store(cfg)
    state = store.load() or GridState.fresh(cfg.grid.budget)
    report_dir = cfg.output_dir / "report"
    table_path = report_dir / "table.csv"
    export_table(state, table_path)

    curves: dict[tuple[str, int], dict[str, list]] = defaultdict(dict)
    for cell in state.with_status("done"):
        path = store.result_path(cell)
        if not path.exists():
            logger.warning("No result file for done cell %s", cell.slug)
            continue
        result = RunResult.model_validate_json(path.read_text())
        if not result.report.roc_points:
            continue
        export_roc_csv(result.report.roc_points, report_dir / "roc" / f"{cell.slug}.csv")
        gate = "gate" if cell.condition.activity_gate else "nogate"
        block = f"w{cell.condition.window_len_s}_{gate}"
        curves[(block, cell.lead_time_s)][cell.mode.value] = result.report.roc_points

    for (block, lead), by_mode in sorted(curves.items()):
        plot_roc_svg(by_mode, report_dir / "roc" / f"{block}_lead{lead}.svg", title=f"{block}, lead {lead} s")
    logger.info("Report written to %s (%d ROC figures)", report_dir, len(curves))
    return table_path


def cmd_explore(cfg: PipelineConfig) -> Path:
    sessions = read_cohort(cfg.data_dir)
    explore_dir = cfg.output_dir / "explore"
    explore_dir.mkdir(parents=True, exist_ok=True)
    summary = summarize_sessions(sessions)
    summary.to_csv(explore_dir / "summary.csv", index=False, float_format="%.6g", lineterminator="\n")
    plot_histograms(sessions, explore_dir / "histograms.svg")
    logger.info("Exploration of %d sessions written to %s", len(sessions), explore_dir)
    return explore_dir
