"""The two split schemes: random 80/10/10 and two-stage personalized."""
import logging
from typing import Callable

import numpy as np

from src.core.exceptions import InsufficientDataError
from src.core.seeds import substream
from src.windowing.types import DatasetSplit, Example, SplitDescriptor, event_fraction

logger = logging.getLogger(__name__)

MIN_RANDOM_EXAMPLES = 10
MAX_RESHUFFLES = 100
RATIO_TOLERANCE = 0.05

# Called as balance(pool, label) before a personalized pool is partitioned.
BalanceHook = Callable[[list[Example], str], list[Example]]


def round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def _ratio_deviation(parts: list[list[Example]], global_fraction: float) -> float:
    return max(abs(event_fraction(part) - global_fraction) for part in parts if part)


def split_random(examples: list[Example], seed: int, *names: str | int) -> DatasetSplit:
    """Shuffle, then partition 80/10/10 by count.

    Re-shuffles until every part is within 5 points of the global event
    fraction; after 100 attempts the closest one is kept with a warning.
    """
    n = len(examples)
    if n < MIN_RANDOM_EXAMPLES:
        raise InsufficientDataError(f"random split needs >= {MIN_RANDOM_EXAMPLES} examples, got {n}")
    n_train = round_half_up(0.8 * n)
    n_val = round_half_up(0.1 * n)
    global_fraction = event_fraction(examples)
    rng = substream(seed, "split", *names)

    best: tuple[float, np.ndarray] | None = None
    for _ in range(MAX_RESHUFFLES):
        order = rng.permutation(n)
        parts = [
            [examples[i] for i in order[:n_train]],
            [examples[i] for i in order[n_train : n_train + n_val]],
            [examples[i] for i in order[n_train + n_val :]],
        ]
        deviation = _ratio_deviation(parts, global_fraction)
        if best is None or deviation < best[0]:
            best = (deviation, order)
        if deviation <= RATIO_TOLERANCE:
            break
    else:
        logger.warning(
            "No shuffle within %d attempts kept every part within %.0f points of the event fraction; "
            "using the closest (deviation %.3f)",
            MAX_RESHUFFLES,
            RATIO_TOLERANCE * 100,
            best[0],
        )

    order = best[1]
    return DatasetSplit(
        train=[examples[i] for i in order[:n_train]],
        validation=[examples[i] for i in order[n_train : n_train + n_val]],
        test=[examples[i] for i in order[n_train + n_val :]],
        descriptor=SplitDescriptor("random"),
    )


def _train_validation(pool: list[Example], rng: np.random.Generator, what: str) -> tuple[list[Example], list[Example]]:
    n_train = round_half_up(0.8 * len(pool))
    if n_train == 0 or n_train == len(pool):
        raise InsufficientDataError(f"{what}: {len(pool)} examples cannot be split 80/20")
    order = rng.permutation(len(pool))
    return [pool[i] for i in order[:n_train]], [pool[i] for i in order[n_train:]]


def split_personalized(
    examples: list[Example],
    held_out_subject: str,
    seed: int,
    balance: BalanceHook | None = None,
) -> tuple[DatasetSplit, DatasetSplit]:
    """Stage 1 fits on every other subject, stage 2 on the held-out subject's first week.

    Stage 1 is an 80/20 train/validation split with an empty test part.
    Stage 2 splits the first week 80/20 and tests on the remaining weeks.
    """
    subjects = sorted({ex.subject_id for ex in examples})
    if held_out_subject not in subjects:
        raise InsufficientDataError(f"held-out subject {held_out_subject} has no examples")
    if len(subjects) < 2:
        raise InsufficientDataError("personalized split needs at least 2 subjects")
    own = [ex for ex in examples if ex.subject_id == held_out_subject]
    weeks = sorted({ex.week_index for ex in own})
    if len(weeks) < 2:
        raise InsufficientDataError(f"held-out subject {held_out_subject} has a single week")

    balance = balance or (lambda pool, _label: pool)
    first_week = weeks[0]
    others = balance([ex for ex in examples if ex.subject_id != held_out_subject], "stage1")
    week_one = balance([ex for ex in own if ex.week_index == first_week], "stage2")
    later = balance([ex for ex in own if ex.week_index != first_week], "stage2-test")

    rng = substream(seed, "split", held_out_subject)
    train1, val1 = _train_validation(others, rng, "stage 1")
    train2, val2 = _train_validation(week_one, rng, f"stage 2 ({held_out_subject} week {first_week})")

    stage1 = DatasetSplit(train1, val1, [], SplitDescriptor("personalized", 1, held_out_subject))
    stage2 = DatasetSplit(train2, val2, later, SplitDescriptor("personalized", 2, held_out_subject))
    return stage1, stage2


def split_holdout(examples: list[Example], seed: int, *names: str | int) -> DatasetSplit:
    """80/20 train/validation with an empty test part."""
    train, validation = _train_validation(examples, substream(seed, "split", *names), "holdout split")
    return DatasetSplit(train, validation, [], SplitDescriptor("random"))
