"""Greedy batch order over the grid.

First the whole lead-0 column. Then batches alternate between completing
the row of the best finished cell and completing the lead column with the
best finished cell, skipping rows and columns that are already full. Equal
F1 values fall back to the lexicographic cell order.
"""
from typing import NamedTuple, Protocol

from src.core.exceptions import GridStateError
from src.grid.state import BatchPhase, CellKey, EmittedBatch, GridCell, GridRecord, GridState


class PlannedBatch(NamedTuple):
    phase: BatchPhase
    cells: list[GridCell]


class _Report(Protocol):
    f1_mean: float


class _Result(Protocol):
    report: _Report


def _row_batch(state: GridState) -> list[GridCell]:
    pending = state.with_status("pending")
    done = sorted(state.with_status("done"), key=lambda c: (-c.f1, c.key))
    for best in done:
        row = [c for c in pending if c.row == best.row]
        if row:
            return row
    return []


def _column_batch(state: GridState) -> list[GridCell]:
    pending = state.with_status("pending")
    best_per_lead: dict[int, float] = {}
    for cell in state.with_status("done"):
        best_per_lead[cell.lead_time_s] = max(best_per_lead.get(cell.lead_time_s, cell.f1), cell.f1)
    open_leads = sorted(
        (lead for lead in best_per_lead if any(c.lead_time_s == lead for c in pending)),
        key=lambda lead: (-best_per_lead[lead], lead),
    )
    if not open_leads:
        return []
    return [c for c in pending if c.lead_time_s == open_leads[0]]


def plan_batch(state: GridState) -> PlannedBatch:
    state.check()
    running = state.with_status("running")
    if running:
        return PlannedBatch("resume", running)

    pending = state.with_status("pending")
    remaining = state.remaining_budget
    if not pending or remaining == 0:
        return PlannedBatch("lead0", [])

    greedy = [b.phase for b in state.batches if b.phase in ("row", "column")]
    lead0 = [c for c in pending if c.lead_time_s == 0]
    if lead0 and not greedy:
        phase, cells = "lead0", lead0
    else:
        phase = "column" if greedy and greedy[-1] == "row" else "row"
        builders = {"row": _row_batch, "column": _column_batch}
        cells = builders[phase](state)
        if not cells:
            phase = "row" if phase == "column" else "column"
            cells = builders[phase](state)
        if not cells:
            phase, cells = "row", pending

    if remaining is not None:
        cells = cells[:remaining]
    return PlannedBatch(phase, cells)


def next_batch(state: GridState) -> list[GridCell]:
    """Cells to run next; an empty list means the grid is finished or out of budget."""
    return plan_batch(state).cells


def start_batch(state: GridState, planned: PlannedBatch) -> GridState:
    """Mark the batch running and log it."""
    new = state.model_copy(deep=True)
    keys = [cell.key for cell in planned.cells]
    for key in keys:
        cell = new.cell(key)
        if cell.status == "done":
            raise GridStateError(f"cell {cell.slug} is already done")
        cell.status = "running"
    if planned.phase != "resume" and keys:
        new.batches.append(EmittedBatch(phase=planned.phase, keys=keys))
    return new


def record_f1(state: GridState, key: CellKey, f1: float) -> GridState:
    new = state.model_copy(deep=True)
    cell = new.cell(key)
    if cell.status == "done":
        raise GridStateError(f"cell {cell.slug} already recorded")
    cell.status = "done"
    cell.f1 = float(f1)
    new.history.append(GridRecord(key=key, f1=cell.f1))
    return new


def record(state: GridState, cell: GridCell, run_result: _Result) -> GridState:
    """Mark ``cell`` done with the run's mean F1 over seeds."""
    return record_f1(state, cell.key, run_result.report.f1_mean)


def replay(history: list[GridRecord], budget: int | None = None) -> GridState:
    state = GridState.fresh(budget)
    for entry in history:
        state = record_f1(state, tuple(entry.key), entry.f1)
    return state


def reopen(state: GridState, key: CellKey) -> GridState:
    """Return a done cell to pending and drop its history entry (forced re-run)."""
    new = state.model_copy(deep=True)
    cell = new.cell(key)
    cell.status = "pending"
    cell.f1 = None
    new.history = [entry for entry in new.history if tuple(entry.key) != key]
    return new
