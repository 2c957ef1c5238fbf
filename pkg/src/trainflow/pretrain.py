"""Pretraining on the stand-in corpora with leave-one-corpus-out evaluation.

Each fit first trains the autoencoder on every window of the training
corpora, then trains the classifier (sharing the encoder) on their labels.
The returned parameters come from a final fit on all corpora.
"""
import logging
from typing import NamedTuple

from pydantic import BaseModel

from src.core.exceptions import InsufficientDataError
from src.core.seeds import substream
from src.dsp.pipeline import preprocess_sessions
from src.metrics.classification import accuracy, confusion, f1
from src.metrics.roc import roc_auc
from src.nn.model import Architecture, ModelParams
from src.nn.train import predict, train_autoencoder, train_classifier
from src.trainflow.config import PretrainConfig
from src.trainflow.corpora import PretrainCorpus
from src.windowing.balance import standardize_all, undersample
from src.windowing.config import TargetRate, WindowConfig, WindowLength
from src.windowing.extract import extract_windows
from src.windowing.split import split_holdout
from src.windowing.types import Example, labels_of, stack_signals

logger = logging.getLogger(__name__)


class FoldReport(BaseModel):
    held_out_corpus: str
    n_test: int
    accuracy: float
    f1: float
    auc: float | None = None


class PretrainResult(NamedTuple):
    params: ModelParams
    folds: list[FoldReport]


def corpus_examples(
    corpus: PretrainCorpus, window: WindowConfig, root_seed: int
) -> list[Example]:
    sessions = preprocess_sessions(corpus.sessions, window.target_rate_hz, source=corpus.name)
    windows = extract_windows(sessions, window)
    if not windows.events:
        raise InsufficientDataError(f"corpus {corpus.name} yields no event windows")
    examples = standardize_all(windows.events + windows.nonevents)
    return undersample(examples, root_seed, "pretrain", corpus.name)


def fit(
    examples: list[Example],
    cfg: PretrainConfig,
    root_seed: int,
    architecture: Architecture | None = None,
    *names: str | int,
) -> ModelParams:
    params = ModelParams.init(substream(root_seed, "init", "pretrain", *names), architecture)
    train_cfg = cfg.train.model_copy(update={"freeze_encoder": cfg.freeze_encoder})
    if cfg.autoencoder_epochs:
        losses = train_autoencoder(params, stack_signals(examples), cfg.autoencoder_epochs, train_cfg, *names)
        logger.info("Autoencoder %s: loss %.5f -> %.5f", "/".join(map(str, names)) or "all", losses[0], losses[-1])
    split = split_holdout(examples, root_seed, "pretrain", *names)
    return train_classifier(params, split, train_cfg, "pretrain", *names).params


def pretrain(
    corpora: list[PretrainCorpus],
    cfg: PretrainConfig,
    window_len_s: WindowLength = 60,
    target_rate_hz: TargetRate = 4,
    root_seed: int = 0,
    architecture: Architecture | None = None,
) -> PretrainResult:
    if len(corpora) < 2:
        raise InsufficientDataError(f"pretraining needs >= 2 corpora, got {len(corpora)}")
    window = WindowConfig(
        window_len_s=window_len_s, lead_time_s=cfg.lead_time_s, target_rate_hz=target_rate_hz, seed=root_seed
    )
    per_corpus = {corpus.name: corpus_examples(corpus, window, root_seed) for corpus in corpora}

    folds = []
    for held_out in per_corpus:
        train = [ex for name, examples in per_corpus.items() if name != held_out for ex in examples]
        params = fit(train, cfg, root_seed, architecture, "fold", held_out)
        test = per_corpus[held_out]
        scores = predict(params, test)
        labels = labels_of(test)
        counts = confusion(scores, labels)
        fold = FoldReport(
            held_out_corpus=held_out,
            n_test=len(test),
            accuracy=accuracy(counts),
            f1=f1(counts),
            auc=roc_auc(scores, labels),
        )
        logger.info("Pretrain fold held_out=%s f1=%.3f accuracy=%.3f", held_out, fold.f1, fold.accuracy)
        folds.append(fold)

    everything = [ex for examples in per_corpus.values() for ex in examples]
    params = fit(everything, cfg, root_seed, architecture, "all")
    return PretrainResult(params, folds)


def params_filename(window_len_s: int, target_rate_hz: int) -> str:
    return f"pretrained_{window_len_s}s_{target_rate_hz}hz.npz"
