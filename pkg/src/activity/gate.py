"""Removing physical-activity windows, and the re-sample rule after heavy removal."""
import itertools
import logging
from dataclasses import replace

import numpy as np
from pydantic import BaseModel, Field

from src.activity.model import ActivityModel, classify
from src.core.seeds import substream
from src.windowing.types import EVENT, NONEVENT, Example

logger = logging.getLogger(__name__)

RESAMPLE_FRACTION = 0.25


class GateReport(BaseModel):
    n_input: int
    n_removed: int
    removed_fraction: float
    resampled: bool
    n_added: int = 0
    shortfall: int = 0


def annotate(examples: list[Example], model: ActivityModel) -> list[Example]:
    """Set every example's activity flag; the examples themselves are kept."""
    return [replace(ex, activity=classify(ex, model)) for ex in examples]


def gate_dataset(
    examples: list[Example],
    model: ActivityModel,
    nonevent_pool: list[Example],
    seed: int,
    *names: str | int,
) -> tuple[list[Example], GateReport]:
    """Drop activity windows; refill non-events from the pool when >= 25% went.

    Events are never replaced and nothing classified as non-activity is
    dropped, so the 1/3 event fraction is restored only by adding.
    """
    flagged = annotate(examples, model)
    kept = [ex for ex in flagged if not ex.activity]
    n_input = len(examples)
    n_removed = n_input - len(kept)
    fraction = n_removed / n_input if n_input else 0.0
    report = GateReport(n_input=n_input, n_removed=n_removed, removed_fraction=fraction, resampled=False)

    if n_input and fraction >= RESAMPLE_FRACTION:
        report.resampled = True
        n_event = sum(ex.label == EVENT for ex in kept)
        need = 2 * n_event - (len(kept) - n_event)
        if need > 0:
            taken = {ex.key for ex in examples}
            candidates = [
                ex for ex in annotate(nonevent_pool, model)
                if ex.label == NONEVENT and not ex.activity and ex.key not in taken
            ]
            if len(candidates) < need:
                report.shortfall = need - len(candidates)
                logger.warning(
                    "Activity gate: pool holds %d clean non-event windows, %d needed; short by %d",
                    len(candidates),
                    need,
                    report.shortfall,
                )
                chosen = range(len(candidates))
            else:
                rng = substream(seed, "gate", *names)
                chosen = np.sort(rng.choice(len(candidates), size=need, replace=False))
            additions = [candidates[i] for i in chosen]
            report.n_added = len(additions)
            kept = kept + additions

    logger.info(
        "stage=gate input=%d removed=%d fraction=%.3f resampled=%s added=%d",
        n_input,
        n_removed,
        fraction,
        report.resampled,
        report.n_added,
    )
    return kept, report


class ComparisonRow(BaseModel):
    activity: bool
    predicted: int
    label: int
    count: int = Field(ge=0)


class ActivityComparison(BaseModel):
    """Counts of (activity flag x predicted class x true class)."""
    rows: list[ComparisonRow]

    def count(self, activity: bool, predicted: int, label: int) -> int:
        for row in self.rows:
            if (row.activity, row.predicted, row.label) == (activity, predicted, label):
                return row.count
        return 0

    def merge(self, other: "ActivityComparison") -> "ActivityComparison":
        return ActivityComparison(
            rows=[
                r.model_copy(update={"count": r.count + other.count(r.activity, r.predicted, r.label)})
                for r in self.rows
            ]
        )


def compare_with_predictions(
    flags: list[bool] | np.ndarray, predictions: list[int] | np.ndarray, labels: list[int] | np.ndarray
) -> ActivityComparison:
    flags = np.asarray(flags, dtype=bool)
    predictions = np.asarray(predictions, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64)
    if not len(flags) == len(predictions) == len(labels):
        raise ValueError(f"length mismatch: {len(flags)} flags, {len(predictions)} predictions, {len(labels)} labels")
    rows = [
        ComparisonRow(
            activity=activity,
            predicted=predicted,
            label=label,
            count=int(np.sum((flags == activity) & (predictions == predicted) & (labels == label))),
        )
        for activity, predicted, label in itertools.product((False, True), (0, 1), (0, 1))
    ]
    return ActivityComparison(rows=rows)


def empty_comparison() -> ActivityComparison:
    return compare_with_predictions([], [], [])
