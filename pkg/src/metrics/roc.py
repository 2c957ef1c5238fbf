import numpy as np
from sklearn.metrics import auc as trapezoid_area
from sklearn.metrics import roc_curve

from src.core.exceptions import MalformedCurveError

RocPoints = list[tuple[float, float]]


def roc(scores, labels) -> RocPoints:
    """(FPR, TPR) at every distinct score, from (0,0) to (1,1); equal scores move together."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(np.int64)
    if scores.shape != labels.shape:
        raise ValueError(f"length mismatch: {scores.size} scores, {labels.size} labels")
    if set(np.unique(labels).tolist()) != {0, 1}:
        raise ValueError("ROC needs both positive and negative examples")
    fpr, tpr, _ = roc_curve(labels, scores, drop_intermediate=False)
    return [(float(x), float(y)) for x, y in zip(fpr, tpr)]


def auc(points: RocPoints) -> float:
    """Trapezoidal area under a monotone ROC curve."""
    if len(points) < 2:
        raise MalformedCurveError(f"a curve needs at least 2 points, got {len(points)}")
    fpr = np.array([p[0] for p in points], dtype=np.float64)
    tpr = np.array([p[1] for p in points], dtype=np.float64)
    if (fpr[0], tpr[0]) != (0.0, 0.0) or (fpr[-1], tpr[-1]) != (1.0, 1.0):
        raise MalformedCurveError("curve must run from (0,0) to (1,1)")
    if np.any(np.diff(fpr) < 0) or np.any(np.diff(tpr) < 0):
        raise MalformedCurveError("curve is not monotone nondecreasing")
    return float(trapezoid_area(fpr, tpr))


def roc_auc(scores, labels) -> float | None:
    """AUC of the scores, or None when only one class is present."""
    labels = np.asarray(labels).astype(np.int64)
    if len(np.unique(labels)) < 2:
        return None
    return auc(roc(scores, labels))
