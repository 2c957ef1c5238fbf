"""Tuned activity classifier: one feature, one threshold."""
import logging
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field

from src.activity.baseline import BaselineWindow
from src.activity.features import ACC_RATE_HZ, ActivityMethod, window_feature
from src.core.exceptions import InsufficientDataError, ShapeError
from src.windowing.types import Example

logger = logging.getLogger(__name__)

MIN_THRESHOLD = 1e-9


class ActivityModel(BaseModel):
    method: ActivityMethod
    threshold: float = Field(gt=0)
    window_len_s: float = Field(gt=0)


def balanced_accuracy(predicted: np.ndarray, active: np.ndarray) -> float:
    """Mean of the true-positive and true-negative rates."""
    tpr = float(np.mean(predicted[active])) if active.any() else 0.0
    tnr = float(np.mean(~predicted[~active])) if (~active).any() else 0.0
    return 0.5 * (tpr + tnr)


def sweep_thresholds(features: np.ndarray, active: np.ndarray) -> tuple[float, float]:
    """Best (threshold, balanced accuracy); candidates are midpoints plus the maximum."""
    distinct = np.unique(features)
    candidates = np.concatenate([(distinct[:-1] + distinct[1:]) / 2.0, distinct[-1:]])
    candidates = candidates[candidates > 0]
    if candidates.size == 0:
        candidates = np.array([MIN_THRESHOLD])

    best_threshold, best_score = float(candidates[0]), -1.0
    for threshold in candidates:
        score = balanced_accuracy(features > threshold, active)
        if score > best_score:
            best_threshold, best_score = float(threshold), score
    return best_threshold, best_score


def tune(windows: list[BaselineWindow]) -> ActivityModel:
    """Pick the method and threshold that best separate dance from relax windows."""
    labels = {w.label for w in windows}
    if labels != {"dance", "relax"}:
        missing = {"dance", "relax"} - labels
        raise InsufficientDataError(f"activity tuning needs dance and relax windows; missing {', '.join(sorted(missing))}")

    active = np.array([w.label == "dance" for w in windows], dtype=bool)
    window_len_s = max(w.acc_window.shape[1] for w in windows) / ACC_RATE_HZ
    best: tuple[float, ActivityModel] | None = None
    for method in ActivityMethod:
        features = np.array([window_feature(w.acc_window, method) for w in windows])
        threshold, score = sweep_thresholds(features, active)
        logger.info("Activity method %s: threshold=%.6g balanced_accuracy=%.4f", method.value, threshold, score)
        # StdDev is tried first and keeps ties.
        if best is None or score > best[0]:
            best = (score, ActivityModel(method=method, threshold=threshold, window_len_s=window_len_s))
    assert best is not None
    return best[1]


def classify_acc(acc_window: np.ndarray, model: ActivityModel) -> bool:
    return window_feature(acc_window, model.method) > model.threshold


def classify(example: Example, model: ActivityModel) -> bool:
    """True when the window counts as physical activity."""
    if example.acc_window is None:
        raise ShapeError(f"window {example.subject_id}@{example.window_start:.0f} has no accelerometer slice")
    return classify_acc(example.acc_window, model)


def baseline_score(windows: list[BaselineWindow], model: ActivityModel) -> float:
    predicted = np.array([classify_acc(w.acc_window, model) for w in windows], dtype=bool)
    active = np.array([w.label == "dance" for w in windows], dtype=bool)
    return balanced_accuracy(predicted, active)


def save_model(model: ActivityModel, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2))
    return path


def load_model(path: Path | str) -> ActivityModel:
    return ActivityModel.model_validate_json(Path(path).read_text())
