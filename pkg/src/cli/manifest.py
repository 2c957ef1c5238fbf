"""Run manifests: the resolved inputs of a command, written before it computes anything."""
import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from src import __version__
from src.core.config import PipelineConfig
from src.persistence.grid_store import write_atomic

logger = logging.getLogger(__name__)

MANIFEST_DIR = "manifests"


class RunManifest(BaseModel):
    command: str
    config_path: str | None = None
    parameters: dict[str, Any] = Field(default_factory=dict)
    config: dict[str, Any] = Field(default_factory=dict)
    root_seed: int
    seeds: list[int] = Field(default_factory=list)
    output_dir: str
    tool_version: str = __version__

    @classmethod
    def build(
        cls,
        command: str,
        config: PipelineConfig,
        config_path: Path | None = None,
        parameters: dict[str, Any] | None = None,
    ) -> "RunManifest":
        return cls(
            command=command,
            config_path=str(config_path) if config_path else None,
            parameters=json.loads(json.dumps(parameters or {}, default=str)),
            config=config.model_dump(mode="json"),
            root_seed=config.root_seed,
            seeds=list(range(config.run.n_seeds)),
            output_dir=str(config.output_dir),
        )

    def path(self) -> Path:
        return Path(self.output_dir) / MANIFEST_DIR / f"{self.command}.json"


def write_manifest(manifest: RunManifest) -> Path:
    path = manifest.path()
    write_atomic(path, manifest.model_dump_json(indent=2) + "\n")
    logger.info("Manifest written to %s", path)
    return path


def read_manifest(path: Path) -> RunManifest:
    return RunManifest.model_validate_json(Path(path).read_text())
