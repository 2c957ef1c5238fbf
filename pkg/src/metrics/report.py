import numpy as np
from pydantic import BaseModel, Field

from src.metrics.aggregate import aggregate
from src.metrics.classification import ConfusionCounts, precision, recall
from src.metrics.roc import auc, roc


class MetricsReport(BaseModel):
    accuracy_mean: float
    accuracy_std: float
    f1_mean: float
    f1_std: float
    precision: float
    recall: float
    auc: float | None = None
    roc_points: list[tuple[float, float]] = Field(default_factory=list)
    per_seed_values: dict[str, list[float]] = Field(default_factory=dict)
    counts: ConfusionCounts = Field(default_factory=ConfusionCounts)


def build_report(
    per_seed_accuracy: list[float],
    per_seed_f1: list[float],
    counts: ConfusionCounts,
    scores: np.ndarray,
    labels: np.ndarray,
    per_seed_auc: list[float | None] | None = None,
) -> MetricsReport:
    """Seed-aggregated accuracy/F1, precision/recall from summed counts, ROC over pooled scores."""
    acc_mean, acc_std = aggregate(per_seed_accuracy)
    f1_mean, f1_std = aggregate(per_seed_f1)
    labels = np.asarray(labels).astype(np.int64)
    points = roc(scores, labels) if len(np.unique(labels)) == 2 else []
    per_seed = {"accuracy": list(per_seed_accuracy), "f1": list(per_seed_f1)}
    if per_seed_auc is not None and all(value is not None for value in per_seed_auc):
        per_seed["auc"] = [float(value) for value in per_seed_auc]
    return MetricsReport(
        accuracy_mean=acc_mean,
        accuracy_std=acc_std,
        f1_mean=f1_mean,
        f1_std=f1_std,
        precision=precision(counts),
        recall=recall(counts),
        auc=auc(points) if points else None,
        roc_points=points,
        per_seed_values=per_seed,
        counts=counts,
    )
