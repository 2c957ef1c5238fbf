"""
Grid Module - The 120-run experiment plan

Contains:
- state.py: Condition, GridCell, GridState and the table block order
- scheduler.py: Greedy batch selection (lead-0 column, then rows and columns)
- table.py: CSV export of the results table
- coordinator.py: LangGraph plan/run/record loop
- runner.py: CellRunner wiring a cell to run_mode and cached pretraining
"""
from .state import CONDITION_ORDER, GRID_SIZE, Condition, GridCell, GridRecord, GridState
from .scheduler import PlannedBatch, next_batch, plan_batch, record, record_f1, reopen, replay, start_batch
from .table import export_table, table_frame
from .coordinator import build_grid_graph, run_grid
from .runner import CellRunner

__all__ = [
    "CONDITION_ORDER",
    "GRID_SIZE",
    "Condition",
    "GridCell",
    "GridRecord",
    "GridState",
    "PlannedBatch",
    "next_batch",
    "plan_batch",
    "record",
    "record_f1",
    "reopen",
    "replay",
    "start_batch",
    "export_table",
    "table_frame",
    "build_grid_graph",
    "run_grid",
    "CellRunner",
]
