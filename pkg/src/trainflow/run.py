"""The five application modes on one target cohort.

Every mode is repeated over the configured seeds. Balancing (undersampling,
then the activity gate when enabled) runs before the Random split and per
pool for the Personalized stages; test partitions only ever reach predict.
"""
import logging
from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, Field

from src.activity.baseline import cohort_baseline_windows
from src.activity.gate import ActivityComparison, GateReport, annotate, compare_with_predictions, gate_dataset
from src.activity.model import ActivityModel, tune
from src.core.exceptions import ConfigError, InsufficientDataError
from src.core.seeds import derive_seed
from src.dsp.pipeline import preprocess_sessions
from src.e4.types import Session
from src.metrics.classification import DEFAULT_THRESHOLD, ConfusionCounts, accuracy, confusion, f1
from src.metrics.report import MetricsReport, build_report
from src.metrics.roc import roc_auc
from src.nn.factory import ParamsFactory
from src.nn.model import ModelParams
from src.nn.train import predict, train_classifier
from src.trainflow.config import RunConfig
from src.trainflow.modes import ApplicationMode
from src.windowing.balance import standardize_all, undersample_with_pool
from src.windowing.extract import extract_windows
from src.windowing.split import split_personalized, split_random
from src.windowing.types import Example, labels_of

logger = logging.getLogger(__name__)


class RunCondition(BaseModel):
    window_len_s: int
    activity_gate: bool
    target_rate_hz: int


class FoldEvaluation(BaseModel):
    seed: int
    held_out_subject: str
    n_test: int
    accuracy: float
    f1: float


class RunResult(BaseModel):
    mode: ApplicationMode
    condition: RunCondition
    lead_time_s: int
    seeds: list[int]
    per_seed_accuracy: list[float]
    per_seed_f1: list[float]
    per_seed_auc: list[float | None]
    report: MetricsReport
    folds: list[FoldEvaluation] = Field(default_factory=list)
    gate_reports: list[GateReport] = Field(default_factory=list)
    activity_comparison: ActivityComparison | None = None


@dataclass
class _Evaluation:
    """Test scores and labels of one fitted model."""
    examples: list[Example]
    scores: np.ndarray

    @property
    def labels(self) -> np.ndarray:
        return labels_of(self.examples)

    @property
    def counts(self) -> ConfusionCounts:
        return confusion(self.scores, self.labels)


@dataclass
class _SeedOutcome:
    accuracy: float
    f1: float
    evaluations: list[_Evaluation]
    folds: list[FoldEvaluation] = field(default_factory=list)


class _Balancer:
    """Undersample a pool, then gate or annotate it with the activity model."""

    def __init__(self, model: ActivityModel | None, gate: bool, root_seed: int) -> None:
        self.model = model
        self.gate = gate
        self.root_seed = root_seed
        self.reports: list[GateReport] = []

    def __call__(self, examples: list[Example], *names: str | int) -> list[Example]:
        kept, pool = undersample_with_pool(examples, self.root_seed, *names)
        if self.model is None:
            return kept
        if self.gate:
            kept, report = gate_dataset(kept, self.model, pool, self.root_seed, *names)
            self.reports.append(report)
            return kept
        return annotate(kept, self.model)

    def flag(self, examples: list[Example]) -> list[Example]:
        """Activity flags only: no undersampling, no gating."""
        if self.model is None:
            return examples
        return annotate(examples, self.model)


def _check_mode(mode: ApplicationMode, pretrained: ModelParams | None) -> None:
    if mode.pretrained and pretrained is None:
        raise ConfigError(f"{mode.value} needs pretrained parameters")
    if not mode.pretrained and pretrained is not None:
        raise ConfigError(f"{mode.value} trains from scratch and must not be given pretrained parameters")


def _activity_model(sessions: list[Session], cfg: RunConfig) -> ActivityModel | None:
    if cfg.activity_model is not None:
        return cfg.activity_model
    windows = cohort_baseline_windows(sessions, cfg.window_len_s)
    if {w.label for w in windows} == {"dance", "relax"}:
        model = tune(windows)
        logger.info("Tuned activity model: %s threshold=%.6g", model.method.value, model.threshold)
        return model
    if cfg.activity_gate:
        raise ConfigError("activity gate enabled but no activity model and no dance/relax baseline to tune one")
    return None


def _initial_params(mode: ApplicationMode, pretrained: ModelParams | None, cfg: RunConfig, seed: int) -> ModelParams:
    if mode.pretrained:
        return ParamsFactory.create("pretrained", pretrained=pretrained)
    return ParamsFactory.create("random", architecture=cfg.architecture, seed=cfg.root_seed, names=(seed,))


def _evaluate(params: ModelParams, test: list[Example]) -> _Evaluation:
    if not test:
        raise InsufficientDataError("empty test partition")
    return _Evaluation(test, predict(params, test))


def _run_seed(
    mode: ApplicationMode,
    examples: list[Example],
    pretrained: ModelParams | None,
    cfg: RunConfig,
    seed: int,
    balance: _Balancer,
) -> _SeedOutcome:
    train_cfg = cfg.train.model_copy(update={"seed": derive_seed(cfg.root_seed, "train", seed)})

    match mode.scheme:
        case "direct":
            assert pretrained is not None
            evaluation = _evaluate(pretrained, balance.flag(examples))
            counts = evaluation.counts
            return _SeedOutcome(accuracy(counts), f1(counts), [evaluation])

        case "random":
            split = split_random(balance(examples, seed, "random"), cfg.root_seed, seed)
            result = train_classifier(_initial_params(mode, pretrained, cfg, seed), split, train_cfg, seed)
            evaluation = _evaluate(result.params, split.test)
            counts = evaluation.counts
            return _SeedOutcome(accuracy(counts), f1(counts), [evaluation])

        case "personalized":
            subjects = sorted({ex.subject_id for ex in examples})
            evaluations, folds = [], []
            for held_out in subjects:
                stage1, stage2 = split_personalized(
                    examples,
                    held_out,
                    derive_seed(cfg.root_seed, "run", seed),
                    balance=lambda pool, label: balance(pool, seed, held_out, label),
                )
                first = train_classifier(
                    _initial_params(mode, pretrained, cfg, seed), stage1, train_cfg, seed, held_out, "stage1"
                )
                second = train_classifier(first.params, stage2, train_cfg, seed, held_out, "stage2")
                evaluation = _evaluate(second.params, stage2.test)
                counts = evaluation.counts
                folds.append(
                    FoldEvaluation(
                        seed=seed,
                        held_out_subject=held_out,
                        n_test=len(stage2.test),
                        accuracy=accuracy(counts),
                        f1=f1(counts),
                    )
                )
                evaluations.append(evaluation)
                logger.info("seed=%d held_out=%s f1=%.3f", seed, held_out, folds[-1].f1)
            return _SeedOutcome(
                float(np.mean([fold.accuracy for fold in folds])),
                float(np.mean([fold.f1 for fold in folds])),
                evaluations,
                folds,
            )

        case _:
            raise ConfigError(f"Unknown scheme: {mode.scheme}")


def target_examples(sessions: list[Session], cfg: RunConfig) -> list[Example]:
    """Filtered, resampled, windowed and standardized examples of the target cohort."""
    processed = preprocess_sessions(sessions, cfg.target_rate_hz)
    windows = extract_windows(processed, cfg.window_config())
    return standardize_all(windows.events + windows.nonevents)


def run_mode(
    mode: ApplicationMode,
    target_sessions: list[Session],
    pretrained: ModelParams | None,
    cfg: RunConfig,
) -> RunResult:
    _check_mode(mode, pretrained)
    examples = target_examples(target_sessions, cfg)
    balance = _Balancer(_activity_model(target_sessions, cfg), cfg.activity_gate, cfg.root_seed)

    outcomes = []
    for seed in cfg.seeds:
        outcome = _run_seed(mode, examples, pretrained, cfg, seed, balance)
        logger.info("mode=%s seed=%d accuracy=%.3f f1=%.3f", mode.value, seed, outcome.accuracy, outcome.f1)
        outcomes.append(outcome)

    evaluations = [ev for outcome in outcomes for ev in outcome.evaluations]
    counts = sum((ev.counts for ev in evaluations), ConfusionCounts())
    scores = np.concatenate([ev.scores for ev in evaluations])
    labels = np.concatenate([ev.labels for ev in evaluations])
    per_seed_auc = [
        roc_auc(
            np.concatenate([ev.scores for ev in outcome.evaluations]),
            np.concatenate([ev.labels for ev in outcome.evaluations]),
        )
        for outcome in outcomes
    ]

    comparison = None
    tested = [ex for ev in evaluations for ex in ev.examples]
    if tested and all(ex.activity is not None for ex in tested):
        comparison = compare_with_predictions(
            [ex.activity for ex in tested], (scores >= DEFAULT_THRESHOLD).astype(np.int64), labels
        )

    return RunResult(
        mode=mode,
        condition=RunCondition(
            window_len_s=cfg.window_len_s, activity_gate=cfg.activity_gate, target_rate_hz=cfg.target_rate_hz
        ),
        lead_time_s=cfg.lead_time_s,
        seeds=list(cfg.seeds),
        per_seed_accuracy=[o.accuracy for o in outcomes],
        per_seed_f1=[o.f1 for o in outcomes],
        per_seed_auc=per_seed_auc,
        report=build_report(
            [o.accuracy for o in outcomes], [o.f1 for o in outcomes], counts, scores, labels, per_seed_auc
        ),
        folds=[fold for o in outcomes for fold in o.folds],
        gate_reports=balance.reports,
        activity_comparison=comparison,
    )
