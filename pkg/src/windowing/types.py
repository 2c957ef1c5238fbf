from dataclasses import dataclass, field
from typing import Literal

import numpy as np

EVENT = 1
NONEVENT = 0


@dataclass(frozen=True)
class Example:
    """One window: rows BVP, EDA, HR, TEMP at the target rate."""
    signal: np.ndarray
    label: int
    subject_id: str
    week_index: int
    window_start: float
    acc_window: np.ndarray | None = None
    lead_time_s: float = 0.0
    activity: bool | None = None
    source: str = "target"

    @property
    def key(self) -> tuple[str, str, int, float]:
        return (self.source, self.subject_id, self.week_index, self.window_start)


@dataclass(frozen=True)
class SplitDescriptor:
    kind: Literal["random", "personalized"]
    stage: int | None = None
    held_out_subject: str | None = None

    def __str__(self) -> str:
        if self.kind == "random":
            return "Random"
        return f"PersonalizedStage{self.stage}({self.held_out_subject})"


@dataclass
class DatasetSplit:
    train: list[Example]
    validation: list[Example]
    test: list[Example]
    descriptor: SplitDescriptor = field(default_factory=lambda: SplitDescriptor("random"))

    def parts(self) -> dict[str, list[Example]]:
        return {"train": self.train, "validation": self.validation, "test": self.test}

    def is_partition_of(self, examples: list[Example]) -> bool:
        keys = [ex.key for part in self.parts().values() for ex in part]
        return len(keys) == len(set(keys)) and set(keys) == {ex.key for ex in examples}


def stack_signals(examples: list[Example]) -> np.ndarray:
    """N x 4 x L batch."""
    return np.stack([ex.signal for ex in examples])


def labels_of(examples: list[Example]) -> np.ndarray:
    return np.array([ex.label for ex in examples], dtype=np.int64)


def event_fraction(examples: list[Example]) -> float:
    if not examples:
        return 0.0
    return float(np.mean(labels_of(examples)))
