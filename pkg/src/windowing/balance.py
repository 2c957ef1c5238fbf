import logging
from dataclasses import replace
from typing import NamedTuple

import numpy as np

from src.core.exceptions import InsufficientDataError
from src.core.seeds import substream
from src.windowing.types import EVENT, Example

logger = logging.getLogger(__name__)

STD_FLOOR = 1e-8


def standardize(example: Example) -> Example:
    """Z-score every channel with the window's own mean and population std."""
    signal = np.asarray(example.signal, dtype=np.float64)
    if not np.all(np.isfinite(signal)):
        raise ValueError(f"non-finite samples in window {example.subject_id}@{example.window_start:.0f}")
    mean = signal.mean(axis=1, keepdims=True)
    std = signal.std(axis=1, keepdims=True)
    flat = std[:, 0] < STD_FLOOR
    safe = np.where(std < STD_FLOOR, 1.0, std)
    out = (signal - mean) / safe
    out[flat] = 0.0
    return replace(example, signal=out)


def standardize_all(examples: list[Example]) -> list[Example]:
    out = [standardize(ex) for ex in examples]
    logger.info("stage=standardize examples=%d", len(out))
    return out


class Undersampled(NamedTuple):
    kept: list[Example]
    pool: list[Example]


def undersample_with_pool(examples: list[Example], seed: int, *names: str | int) -> Undersampled:
    """Keep every event and 2 non-events per event; the rest becomes the replacement pool.

    Both lists keep the input order. ``names`` extend the ``undersample``
    substream so independent calls on one seed draw independently.
    """
    is_event = np.array([ex.label == EVENT for ex in examples], dtype=bool)
    n_event = int(is_event.sum())
    if n_event == 0:
        raise InsufficientDataError("undersampling needs at least one event example")

    nonevent_idx = np.flatnonzero(~is_event)
    wanted = 2 * n_event
    if len(nonevent_idx) < wanted:
        logger.warning(
            "Only %d non-event windows for %d events (wanted %d); keeping all of them",
            len(nonevent_idx),
            n_event,
            wanted,
        )
        chosen = nonevent_idx
    else:
        rng = substream(seed, "undersample", *names)
        chosen = np.sort(rng.choice(nonevent_idx, size=wanted, replace=False))

    keep = is_event.copy()
    keep[chosen] = True
    kept = [ex for ex, k in zip(examples, keep) if k]
    pool = [ex for ex, k in zip(examples, keep) if not k]
    logger.info("stage=undersample events=%d nonevents=%d pool=%d", n_event, len(kept) - n_event, len(pool))
    return Undersampled(kept, pool)


def undersample(examples: list[Example], seed: int, *names: str | int) -> list[Example]:
    return undersample_with_pool(examples, seed, *names).kept
