"""Training loops: autoencoder reconstruction and classifier fitting with early stopping."""
import logging
from typing import NamedTuple

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.core.exceptions import DivergenceError, InsufficientDataError, ShapeError
from src.core.seeds import substream
from src.nn.layers import bce_loss, mse_loss
from src.nn.model import (
    ModelParams,
    autoencoder_backward,
    autoencoder_forward,
    classifier_backward,
    classifier_forward,
)
from src.nn.optim import Adam
from src.windowing.types import DatasetSplit, Example, labels_of, stack_signals

logger = logging.getLogger(__name__)

PREDICT_CHUNK = 256


class TrainConfig(BaseModel):
    learning_rate: float = Field(default=1e-3, gt=0)
    batch_size: int = Field(default=32, gt=0)
    max_epochs: int = Field(default=200, gt=0)
    early_stop_patience: int = Field(default=10, gt=0)
    seed: int = 0
    freeze_encoder: bool = False

    @model_validator(mode="after")
    def check_patience(self) -> Self:
        if self.early_stop_patience >= self.max_epochs:
            raise ValueError("early_stop_patience must be smaller than max_epochs")
        return self


class EpochRecord(BaseModel):
    epoch: int
    train_loss: float
    validation_loss: float


class TrainResult(NamedTuple):
    params: ModelParams
    history: list[EpochRecord]
    best_epoch: int


def _check_finite(loss: float, what: str) -> float:
    if not np.isfinite(loss):
        raise DivergenceError(f"{what} loss became non-finite ({loss})")
    return loss


def trainable_names(params: ModelParams, freeze_encoder: bool) -> set[str]:
    names = set(params.named_params())
    if freeze_encoder:
        names = {name for name in names if not name.startswith("encoder.")}
    return names


def autoencoder_step(params: ModelParams, batch: np.ndarray, optimizer: Adam) -> float:
    """One reconstruction update; returns the pre-update mean squared error."""
    batch = np.asarray(batch, dtype=np.float64)
    params.zero_grad()
    recon = autoencoder_forward(params, batch)
    loss, grad = mse_loss(recon, batch)
    _check_finite(loss, "reconstruction")
    autoencoder_backward(params, grad)
    optimizer.step(params.named_grads())
    return loss


def train_autoencoder(
    params: ModelParams, batch: np.ndarray, epochs: int, cfg: TrainConfig, *names: str | int
) -> list[float]:
    """Mini-batch reconstruction training over ``epochs`` passes; returns per-epoch mean loss."""
    optimizer = Adam(params.named_params(), cfg.learning_rate, trainable=trainable_names(params, False))
    rng = substream(cfg.seed, "train", "autoencoder", *names)
    losses = []
    for epoch in range(epochs):
        order = rng.permutation(len(batch))
        batch_losses = [
            autoencoder_step(params, batch[order[i : i + cfg.batch_size]], optimizer)
            for i in range(0, len(batch), cfg.batch_size)
        ]
        losses.append(float(np.mean(batch_losses)))
        logger.debug("autoencoder epoch=%d loss=%.6f", epoch, losses[-1])
    return losses


def classifier_loss(params: ModelParams, batch: np.ndarray, labels: np.ndarray) -> float:
    return bce_loss(classifier_forward(params, batch), labels)[0]


def classifier_step(params: ModelParams, batch: np.ndarray, labels: np.ndarray, optimizer: Adam) -> float:
    params.zero_grad()
    loss, grad = bce_loss(classifier_forward(params, batch), labels)
    _check_finite(loss, "classification")
    classifier_backward(params, grad)
    optimizer.step(params.named_grads())
    return loss


def _evaluate_loss(params: ModelParams, batch: np.ndarray, labels: np.ndarray) -> float:
    probs = np.concatenate(
        [classifier_forward(params, batch[i : i + PREDICT_CHUNK]) for i in range(0, len(batch), PREDICT_CHUNK)]
    )
    return _check_finite(bce_loss(probs, labels)[0], "validation")


def train_classifier(
    params_init: ModelParams, split: DatasetSplit, cfg: TrainConfig, *names: str | int
) -> TrainResult:
    """Minimize cross-entropy on ``split.train``; keep the best-validation checkpoint.

    ``params_init`` is not modified. Test examples are never looked at.
    """
    if not split.train or not split.validation:
        raise InsufficientDataError(
            f"training needs train and validation examples, got {len(split.train)}/{len(split.validation)}"
        )
    x_train, y_train = stack_signals(split.train), labels_of(split.train)
    x_val, y_val = stack_signals(split.validation), labels_of(split.validation)

    params = params_init.copy()
    params.signal_length = x_train.shape[2]
    optimizer = Adam(
        params.named_params(), cfg.learning_rate, trainable=trainable_names(params, cfg.freeze_encoder)
    )
    rng = substream(cfg.seed, "train", "classifier", *names)

    best = params.copy()
    best_loss = _evaluate_loss(params, x_val, y_val)
    best_epoch = 0
    history: list[EpochRecord] = []
    for epoch in range(1, cfg.max_epochs + 1):
        order = rng.permutation(len(x_train))
        losses = []
        for i in range(0, len(order), cfg.batch_size):
            idx = order[i : i + cfg.batch_size]
            losses.append(classifier_step(params, x_train[idx], y_train[idx], optimizer))
        val_loss = _evaluate_loss(params, x_val, y_val)
        history.append(EpochRecord(epoch=epoch, train_loss=float(np.mean(losses)), validation_loss=val_loss))
        if val_loss < best_loss:
            best, best_loss, best_epoch = params.copy(), val_loss, epoch
        elif epoch - best_epoch >= cfg.early_stop_patience:
            logger.info("Early stop at epoch %d (best epoch %d, validation loss %.5f)", epoch, best_epoch, best_loss)
            break

    return TrainResult(best, history, best_epoch)


def predict(params: ModelParams, examples: list[Example] | np.ndarray) -> np.ndarray:
    """One event score per example, in input order."""
    batch = stack_signals(examples) if isinstance(examples, list) else np.asarray(examples, dtype=np.float64)
    if len(batch) == 0:
        return np.zeros(0)
    if params.signal_length is not None and batch.shape[-1] != params.signal_length:
        raise ShapeError(
            f"model trained on windows of {params.signal_length} samples, got {batch.shape[-1]}"
        )
    return np.concatenate(
        [classifier_forward(params, batch[i : i + PREDICT_CHUNK]) for i in range(0, len(batch), PREDICT_CHUNK)]
    )
