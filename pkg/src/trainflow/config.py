from pydantic import BaseModel, Field

from src.activity.model import ActivityModel
from src.nn.model import Architecture
from src.nn.train import TrainConfig
from src.windowing.config import LeadTime, TargetRate, WindowConfig, WindowLength


class PretrainConfig(BaseModel):
    """Stand-in corpora scale and the two pretraining phases."""
    subjects_per_corpus: int = Field(default=3, ge=2)
    weeks_per_subject: int = Field(default=1, ge=1)
    session_duration_s: float = 3600.0
    event_scale: float = Field(default=1.0, gt=0)
    noise_scale: float = Field(default=1.0, ge=0)
    response_s: float = Field(default=300.0, gt=0)
    autoencoder_epochs: int = Field(default=20, ge=0)
    lead_time_s: LeadTime = 0
    freeze_encoder: bool = False
    train: TrainConfig = Field(default_factory=TrainConfig)


class RunConfig(BaseModel):
    window_len_s: WindowLength = 60
    lead_time_s: LeadTime = 0
    target_rate_hz: TargetRate = 4
    activity_gate: bool = True
    activity_model: ActivityModel | None = None
    seeds: list[int] = Field(default_factory=lambda: list(range(10)), min_length=1)
    root_seed: int = 0
    train: TrainConfig = Field(default_factory=TrainConfig)
    architecture: Architecture = Field(default_factory=Architecture)

    def window_config(self) -> WindowConfig:
        return WindowConfig(
            window_len_s=self.window_len_s,
            lead_time_s=self.lead_time_s,
            target_rate_hz=self.target_rate_hz,
            seed=self.root_seed,
        )
