"""Configuration.

Precedence, lowest first: model defaults, the JSON config file, ``WRISTCAST_*``
environment variables (``Settings``), command-line flags.
"""
import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.activity.model import ActivityModel
from src.core.exceptions import ConfigError
from src.e4.synthetic import SyntheticConfig
from src.nn.model import Architecture
from src.nn.train import TrainConfig
from src.trainflow.config import PretrainConfig, RunConfig
from src.windowing.config import LEAD_TIMES, LeadTime, TargetRate, WindowLength

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Environment overrides; unset fields leave the config file untouched."""
    model_config = SettingsConfigDict(env_prefix="WRISTCAST_", extra="ignore")

    config_path: Path | None = None
    data_dir: Path | None = None
    output_dir: Path | None = None
    root_seed: int | None = None
    log_level: str | None = None
    n_workers: int | None = Field(default=None, ge=1)


class PreprocessSection(BaseModel):
    window_lengths: list[WindowLength] = Field(default_factory=lambda: [60, 300], min_length=1)
    target_rates: list[TargetRate] = Field(default_factory=lambda: [4], min_length=1)
    lead_times: list[LeadTime] = Field(default_factory=lambda: list(LEAD_TIMES), min_length=1)


class ActivitySection(BaseModel):
    window_len_s: WindowLength = 60
    model_path: Path | None = None


class RunSection(BaseModel):
    n_seeds: int = Field(default=10, ge=1)
    target_rate_hz: TargetRate = 4
    architecture: Architecture = Field(default_factory=Architecture)


class GridSection(BaseModel):
    budget: int | None = Field(default=None, ge=0)


class PipelineConfig(BaseModel):
    root_seed: int = 0
    data_dir: Path = Path("data")
    output_dir: Path = Path("runs")
    n_workers: int = Field(default=1, ge=1)
    log_level: str = "INFO"
    generate: SyntheticConfig = Field(default_factory=SyntheticConfig)
    preprocess: PreprocessSection = Field(default_factory=PreprocessSection)
    activity: ActivitySection = Field(default_factory=ActivitySection)
    train: TrainConfig = Field(default_factory=TrainConfig)
    pretrain: PretrainConfig = Field(default_factory=PretrainConfig)
    run: RunSection = Field(default_factory=RunSection)
    grid: GridSection = Field(default_factory=GridSection)

    def run_config(
        self,
        window_len_s: WindowLength,
        lead_time_s: LeadTime,
        activity_gate: bool,
        activity_model: ActivityModel | None = None,
    ) -> RunConfig:
        return RunConfig(
            window_len_s=window_len_s,
            lead_time_s=lead_time_s,
            target_rate_hz=self.run.target_rate_hz,
            activity_gate=activity_gate,
            activity_model=activity_model,
            seeds=list(range(self.run.n_seeds)),
            root_seed=self.root_seed,
            train=self.train,
            architecture=self.run.architecture,
        )


def _deep_update(base: dict[str, Any], update: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_update(merged[key], value)
        else:
            merged[key] = value
    return merged


def read_config_file(path: Path) -> dict[str, Any]:
    """Read a JSON config; a run manifest is accepted and its resolved config used."""
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path} is not valid JSON: {e.msg} (line {e.lineno})") from e
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    if "command" in data and isinstance(data.get("config"), dict):
        return data["config"]
    return data


def load_config(
    path: Path | None = None,
    settings: Settings | None = None,
    overrides: dict[str, Any] | None = None,
) -> PipelineConfig:
    """Merge defaults, the JSON file, the environment and flag overrides.

    ``overrides`` may be nested (``{"grid": {"budget": 25}}``); ``None`` values
    are skipped so unset flags never mask the file.
    """
    settings = settings if settings is not None else Settings()
    path = path or settings.config_path

    data: dict[str, Any] = {}
    if path is not None:
        data = read_config_file(path)
        logger.debug("Loaded config from %s", path)

    env = settings.model_dump(exclude={"config_path"}, exclude_none=True)
    data = _deep_update(data, env)
    data = _deep_update(data, _drop_none(overrides or {}))
    return PipelineConfig.model_validate(data)


def _drop_none(values: dict[str, Any]) -> dict[str, Any]:
    cleaned = {}
    for key, value in values.items():
        if isinstance(value, dict):
            value = _drop_none(value)
            if value:
                cleaned[key] = value
        elif value is not None:
            cleaned[key] = value
    return cleaned
