from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

WindowLength = Literal[60, 300]
LeadTime = Literal[0, 60, 120, 180, 240, 300]
TargetRate = Literal[4, 64]

WINDOW_LENGTHS: tuple[int, ...] = (60, 300)
LEAD_TIMES: tuple[int, ...] = (0, 60, 120, 180, 240, 300)
TARGET_RATES: tuple[int, ...] = (4, 64)

EVENT_FRACTION = 1.0 / 3.0


class WindowConfig(BaseModel):
    """One (window length, lead time, target rate) point of the preprocessing grid."""
    model_config = ConfigDict(frozen=True)

    window_len_s: WindowLength = 60
    lead_time_s: LeadTime = 0
    target_rate_hz: TargetRate = 4
    post_tag_buffer_s: Literal[300] = 300
    event_fraction: float = Field(default=EVENT_FRACTION, ge=EVENT_FRACTION, le=EVENT_FRACTION)
    seed: int = 0

    @property
    def n_samples(self) -> int:
        return self.window_len_s * self.target_rate_hz
