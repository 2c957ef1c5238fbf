import logging

import numpy as np
from pydantic import BaseModel, Field
from sklearn.metrics import confusion_matrix

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.5


class ConfusionCounts(BaseModel):
    tp: int = Field(default=0, ge=0)
    tn: int = Field(default=0, ge=0)
    fp: int = Field(default=0, ge=0)
    fn: int = Field(default=0, ge=0)

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            tp=self.tp + other.tp, tn=self.tn + other.tn, fp=self.fp + other.fp, fn=self.fn + other.fn
        )


def _check_binary(labels: np.ndarray) -> None:
    if not np.all(np.isin(labels, (0, 1))):
        raise ValueError("labels must be 0 or 1")


def confusion(scores, labels, threshold: float = DEFAULT_THRESHOLD) -> ConfusionCounts:
    """Counts with a window predicted positive iff its score >= threshold."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(np.int64)
    if scores.shape != labels.shape:
        raise ValueError(f"length mismatch: {scores.size} scores, {labels.size} labels")
    if scores.size == 0:
        raise ValueError("confusion counts need at least one example")
    _check_binary(labels)
    predicted = (scores >= threshold).astype(np.int64)
    tn, fp, fn, tp = confusion_matrix(labels, predicted, labels=[0, 1]).ravel()
    return ConfusionCounts(tp=int(tp), tn=int(tn), fp=int(fp), fn=int(fn))


def accuracy(counts: ConfusionCounts) -> float:
    if counts.total == 0:
        raise ValueError("accuracy of an empty evaluation")
    return (counts.tp + counts.tn) / counts.total


def f1(counts: ConfusionCounts) -> float:
    """2TP / (2TP + FP + FN); 0 with a warning when nothing was predicted or present."""
    denominator = 2 * counts.tp + counts.fp + counts.fn
    if denominator == 0:
        logger.warning("F1 undefined (no positive labels or predictions); reporting 0")
        return 0.0
    return 2 * counts.tp / denominator


def precision(counts: ConfusionCounts) -> float:
    predicted = counts.tp + counts.fp
    return counts.tp / predicted if predicted else 0.0


def recall(counts: ConfusionCounts) -> float:
    actual = counts.tp + counts.fn
    return counts.tp / actual if actual else 0.0
