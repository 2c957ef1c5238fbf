from pathlib import Path
from typing import Literal

from src.core.seeds import substream
from src.nn.model import Architecture, ModelParams
from src.nn.storage import load_params

ParamsSource = Literal["random", "file", "pretrained"]


class ParamsFactory:

    @staticmethod
    def create(
        source: ParamsSource = "random",
        architecture: Architecture | None = None,
        seed: int = 0,
        path: Path | str | None = None,
        pretrained: ModelParams | None = None,
        names: tuple[str | int, ...] = (),
    ) -> ModelParams:
        match source:
            case "random":
                return ModelParams.init(substream(seed, "init", *names), architecture)

            case "file":
                if path is None:
                    raise ValueError("path required for source 'file'")
                return load_params(path, architecture)

            case "pretrained":
                if pretrained is None:
                    raise ValueError("pretrained params required for source 'pretrained'")
                return pretrained.copy()

            case _:
                raise ValueError(f"Unknown params source: {source}")

    @staticmethod
    def from_config(config: dict) -> ModelParams:
        return ParamsFactory.create(
            source=config.get("source", "random"),
            architecture=config.get("architecture"),
            seed=config.get("seed", 0),
            path=config.get("path"),
            pretrained=config.get("pretrained"),
            names=tuple(config.get("names", ())),
        )
