"""The 4 x 5 x 6 experiment grid: conditions x application modes x lead times."""
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from src.core.exceptions import GridStateError
from src.trainflow.modes import MODE_ORDER, ApplicationMode
from src.windowing.config import LEAD_TIMES, WindowLength

CellStatus = Literal["pending", "running", "done"]
BatchPhase = Literal["lead0", "row", "column", "resume"]
CellKey = tuple[int, int, int]


class Condition(BaseModel):
    model_config = ConfigDict(frozen=True)

    window_len_s: WindowLength
    activity_gate: bool

    @property
    def label(self) -> str:
        gate = "gate" if self.activity_gate else "no gate"
        return f"{self.window_len_s // 60} min, {gate}"


# Block order of the results table.
CONDITION_ORDER: tuple[Condition, ...] = (
    Condition(window_len_s=300, activity_gate=True),
    Condition(window_len_s=300, activity_gate=False),
    Condition(window_len_s=60, activity_gate=True),
    Condition(window_len_s=60, activity_gate=False),
)

GRID_SIZE = len(CONDITION_ORDER) * len(MODE_ORDER) * len(LEAD_TIMES)


class GridCell(BaseModel):
    condition: Condition
    mode: ApplicationMode
    lead_time_s: int
    status: CellStatus = "pending"
    f1: float | None = None

    @property
    def key(self) -> CellKey:
        """Lexicographic order: condition block, mode row, lead ascending."""
        return (CONDITION_ORDER.index(self.condition), MODE_ORDER.index(self.mode), self.lead_time_s)

    @property
    def row(self) -> tuple[int, int]:
        return self.key[:2]

    @property
    def slug(self) -> str:
        gate = "gate" if self.condition.activity_gate else "nogate"
        return f"w{self.condition.window_len_s}_{gate}_{self.mode.value}_lead{self.lead_time_s}"


class GridRecord(BaseModel):
    key: CellKey
    f1: float


class EmittedBatch(BaseModel):
    phase: BatchPhase
    keys: list[CellKey]


class GridState(BaseModel):
    cells: list[GridCell]
    batches: list[EmittedBatch] = Field(default_factory=list)
    history: list[GridRecord] = Field(default_factory=list)
    budget: int | None = Field(default=None, ge=0)

    @classmethod
    def fresh(cls, budget: int | None = None) -> "GridState":
        cells = [
            GridCell(condition=condition, mode=mode, lead_time_s=lead)
            for condition in CONDITION_ORDER
            for mode in MODE_ORDER
            for lead in LEAD_TIMES
        ]
        return cls(cells=cells, budget=budget)

    def check(self) -> None:
        if len(self.cells) != GRID_SIZE:
            raise GridStateError(f"grid must hold {GRID_SIZE} cells, has {len(self.cells)}")
        keys = [cell.key for cell in self.cells]
        if len(set(keys)) != len(keys):
            raise GridStateError("duplicate (condition, mode, lead) cells")
        for cell in self.cells:
            if cell.lead_time_s not in LEAD_TIMES:
                raise GridStateError(f"cell {cell.slug}: lead time {cell.lead_time_s} not on the grid")
            if (cell.f1 is not None) != (cell.status == "done"):
                raise GridStateError(f"cell {cell.slug}: f1 must be present exactly when done")

    def cell(self, key: CellKey) -> GridCell:
        for cell in self.cells:
            if cell.key == key:
                return cell
        raise GridStateError(f"no cell with key {key}")

    def with_status(self, *statuses: CellStatus) -> list[GridCell]:
        return sorted((c for c in self.cells if c.status in statuses), key=lambda c: c.key)

    @property
    def emitted_count(self) -> int:
        return sum(cell.status != "pending" for cell in self.cells)

    @property
    def remaining_budget(self) -> int | None:
        if self.budget is None:
            return None
        return max(0, self.budget - self.emitted_count)
