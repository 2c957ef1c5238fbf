"""Grid State Store - JSON persistence of the grid and of finished cells.

The state file is replaced atomically after every change so an interrupted
grid resumes from the last recorded batch.
"""
import logging
import os
from pathlib import Path
from tempfile import NamedTemporaryFile

from pydantic import BaseModel, ValidationError

from src.core.exceptions import DataFormatError
from src.grid.state import GridCell, GridState

logger = logging.getLogger(__name__)

STATE_FILE = "grid_state.json"
RESULTS_DIR = "results"


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with NamedTemporaryFile("w", dir=path.parent, prefix=f".{path.name}.", delete=False) as tmp:
        tmp.write(text)
        tmp_name = tmp.name
    os.replace(tmp_name, path)


class GridStore:
    """Grid state plus one result file per finished cell, under ``root``."""

    def __init__(self, root: Path) -> None:
        self.root = Path(root)

    @property
    def state_path(self) -> Path:
        return self.root / STATE_FILE

    def result_path(self, cell: GridCell) -> Path:
        return self.root / RESULTS_DIR / f"{cell.slug}.json"

    def save(self, state: GridState) -> None:
        write_atomic(self.state_path, state.model_dump_json(indent=2))

    def load(self) -> GridState | None:
        if not self.state_path.exists():
            return None
        try:
            state = GridState.model_validate_json(self.state_path.read_text())
        except ValidationError as e:
            raise DataFormatError(self.state_path, f"invalid grid state: {e.error_count()} errors") from e
        state.check()
        return state

    def load_or_create(self, budget: int | None = None) -> GridState:
        state = self.load()
        if state is None:
            logger.info("Starting new grid in %s (budget=%s)", self.root, budget)
            return GridState.fresh(budget)
        if state.budget != budget:
            logger.info("Grid budget %s -> %s", state.budget, budget)
            state = state.model_copy(update={"budget": budget})
        logger.info("Resuming grid from %s: %d/%d cells emitted", self.state_path, state.emitted_count, len(state.cells))
        return state

    def save_result(self, cell: GridCell, result: BaseModel) -> Path:
        path = self.result_path(cell)
        write_atomic(path, result.model_dump_json(indent=2))
        return path

    def clear(self) -> None:
        if self.state_path.exists():
            self.state_path.unlink()
