from pydantic import BaseModel

from src.grid.state import CellKey, GridCell

# Lead-0 column and the winning row of the worked scheduling example;
# keys are (condition index, mode index, lead seconds).
WORKED_EXAMPLE_F1: dict[CellKey, float] = {
    (0, 0, 0): 0.2,
    (0, 1, 0): 0.7,
    (0, 2, 0): 0.3,
    (0, 3, 0): 0.3,
    (0, 1, 60): 0.4,
    (0, 1, 120): 0.45,
    (0, 1, 180): 0.5,
    (0, 1, 240): 0.55,
    (0, 1, 300): 0.75,
}


def background_f1(key: CellKey) -> float:
    """Distinct values below every worked-example entry."""
    condition, mode, lead = key
    return 0.05 + 0.001 * (condition * 30 + mode * 6 + lead // 60)


class MockReport(BaseModel):
    f1_mean: float


class MockRunResult(BaseModel):
    slug: str
    report: MockReport


class MockCellRunner:
    """
    A grid cell runner that replays a fixed F1 table instead of training.
    """

    def __init__(self, table: dict[CellKey, float] | None = None):
        self.table = WORKED_EXAMPLE_F1 if table is None else table
        self.calls: list[CellKey] = []

    def f1_for(self, key: CellKey) -> float:
        return self.table.get(key, background_f1(key))

    def __call__(self, cell: GridCell) -> MockRunResult:
        self.calls.append(cell.key)
        return MockRunResult(slug=cell.slug, report=MockReport(f1_mean=self.f1_for(cell.key)))
