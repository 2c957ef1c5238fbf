"""Runs one grid cell against the target cohort."""
import logging
import threading
from pathlib import Path

from src.activity.model import ActivityModel
from src.core.config import PipelineConfig
from src.e4.types import Session
from src.grid.state import GridCell
from src.nn.model import ModelParams
from src.nn.storage import load_params, save_params
from src.trainflow.corpora import build_standin_corpora
from src.trainflow.pretrain import params_filename, pretrain
from src.trainflow.run import RunResult, run_mode

logger = logging.getLogger(__name__)


class CellRunner:
    """Callable cell runner for the grid coordinator.

    Pretrained parameters depend on the window length, so they are loaded
    from (or pretrained into) ``pretrained_dir`` once per length.
    """

    def __init__(
        self,
        sessions: list[Session],
        config: PipelineConfig,
        pretrained_dir: Path | None = None,
        activity_model: ActivityModel | None = None,
    ) -> None:
        self.sessions = sessions
        self.config = config
        self.pretrained_dir = pretrained_dir
        self.activity_model = activity_model
        self._pretrained: dict[int, ModelParams] = {}
        self._lock = threading.Lock()

    def pretrained_for(self, window_len_s: int) -> ModelParams:
        with self._lock:
            if window_len_s in self._pretrained:
                return self._pretrained[window_len_s]
            rate = self.config.run.target_rate_hz
            path = self.pretrained_dir / params_filename(window_len_s, rate) if self.pretrained_dir else None
            if path is not None and path.exists():
                params = load_params(path, self.config.run.architecture)
                logger.info("Loaded pretrained parameters from %s", path)
            else:
                corpora = build_standin_corpora(self.config.pretrain, self.config.root_seed)
                params = pretrain(
                    corpora,
                    self.config.pretrain,
                    window_len_s=window_len_s,
                    target_rate_hz=rate,
                    root_seed=self.config.root_seed,
                    architecture=self.config.run.architecture,
                ).params
                if path is not None:
                    save_params(params, path)
                    logger.info("Saved pretrained parameters to %s", path)
            self._pretrained[window_len_s] = params
            return params

    def __call__(self, cell: GridCell) -> RunResult:
        window_len_s = cell.condition.window_len_s
        model = self.activity_model
        if model is not None and model.window_len_s != window_len_s:
            model = None
        run_cfg = self.config.run_config(window_len_s, cell.lead_time_s, cell.condition.activity_gate, model)
        pretrained = self.pretrained_for(window_len_s) if cell.mode.pretrained else None
        logger.info("Running cell %s", cell.slug)
        return run_mode(cell.mode, self.sessions, pretrained, run_cfg)
