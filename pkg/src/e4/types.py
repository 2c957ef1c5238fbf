from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

import numpy as np


class ChannelKind(str, Enum):
    BVP = "BVP"
    EDA = "EDA"
    TEMP = "TEMP"
    HR = "HR"
    ACC_X = "ACC_X"
    ACC_Y = "ACC_Y"
    ACC_Z = "ACC_Z"


CANONICAL_RATES: dict[ChannelKind, float] = {
    ChannelKind.BVP: 64.0,
    ChannelKind.EDA: 4.0,
    ChannelKind.TEMP: 4.0,
    ChannelKind.HR: 1.0,
    ChannelKind.ACC_X: 32.0,
    ChannelKind.ACC_Y: 32.0,
    ChannelKind.ACC_Z: 32.0,
}

# Channel order of every model input window.
PHYSIO_CHANNELS: tuple[ChannelKind, ...] = (
    ChannelKind.BVP,
    ChannelKind.EDA,
    ChannelKind.HR,
    ChannelKind.TEMP,
)

ACC_CHANNELS: tuple[ChannelKind, ...] = (ChannelKind.ACC_X, ChannelKind.ACC_Y, ChannelKind.ACC_Z)

# E4 raw accelerometer units are 1/64 g.
ACC_UNITS_PER_G = 64.0


@dataclass(frozen=True)
class ChannelRecording:
    """One channel of one session at its native E4 rate."""
    kind: ChannelKind
    start_time: float
    sample_rate: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        object.__setattr__(self, "samples", samples)
        if self.sample_rate <= 0:
            raise ValueError(f"{self.kind.value}: sample rate must be positive")
        if self.sample_rate != CANONICAL_RATES[self.kind]:
            raise ValueError(
                f"{self.kind.value}: rate mismatch, {self.sample_rate} Hz declared, "
                f"{CANONICAL_RATES[self.kind]} Hz expected"
            )
        if not np.all(np.isfinite(samples)):
            raise ValueError(f"{self.kind.value}: non-finite samples")

    @property
    def end_time(self) -> float:
        return self.start_time + len(self.samples) / self.sample_rate


@dataclass(frozen=True)
class BaselineInterval:
    start: float
    end: float
    label: Literal["dance", "relax"]


@dataclass
class Session:
    """One subject-week: multi-rate channels plus event tags."""
    subject_id: str
    week_index: int
    channels: dict[ChannelKind, ChannelRecording]
    tags: np.ndarray = field(default_factory=lambda: np.zeros(0))
    baseline_intervals: list[BaselineInterval] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.tags = np.asarray(self.tags, dtype=np.float64).reshape(-1)
        self.validate()

    @property
    def span(self) -> tuple[float, float]:
        """Intersection of all channels' recorded spans."""
        start = max(ch.start_time for ch in self.channels.values())
        end = min(ch.end_time for ch in self.channels.values())
        return start, end

    def validate(self) -> None:
        if self.week_index < 1:
            raise ValueError(f"week_index must be >= 1, got {self.week_index}")
        missing = [kind.value for kind in ChannelKind if kind not in self.channels]
        if missing:
            raise ValueError(f"missing channels: {', '.join(missing)}")
        if len(self.tags) > 1 and np.any(np.diff(self.tags) <= 0):
            raise ValueError("tags must be strictly increasing")
        start, end = self.span
        outside = self.tags[(self.tags < start) | (self.tags > end)]
        if len(outside):
            raise ValueError(f"tag {outside[0]:.3f} outside recorded span [{start:.3f}, {end:.3f}]")
