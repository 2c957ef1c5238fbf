"""Grid coordinator graph.

plan_batch -> (run_batch | END); run_batch -> record_results -> plan_batch.
The cell runner, the optional store and the worker count travel in
``config["configurable"]``.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, Any, Callable, TypedDict

from langchain_core.runnables import RunnableConfig
from langgraph.graph import END, START, StateGraph
from pydantic import BaseModel

from src.grid.scheduler import plan_batch, record, start_batch
from src.grid.state import GridCell, GridState

if TYPE_CHECKING:
    from src.persistence.grid_store import GridStore

logger = logging.getLogger(__name__)

CellRunnerFn = Callable[[GridCell], BaseModel]

# plan/run/record per batch; the full grid has at most a few dozen batches.
RECURSION_LIMIT = 1000


class GridLoopState(TypedDict):
    grid: GridState
    batch: list[GridCell]
    results: list[tuple[GridCell, Any]]


def _configurable(config: RunnableConfig) -> dict[str, Any]:
    return config.get("configurable", {})


def plan_node(state: GridLoopState, config: RunnableConfig) -> dict[str, Any]:
    planned = plan_batch(state["grid"])
    if not planned.cells:
        logger.info("Grid finished: %d cells done", len(state["grid"].with_status("done")))
        return {"batch": []}
    grid = start_batch(state["grid"], planned)
    logger.info("batch=%s cells=%s", planned.phase, [cell.slug for cell in planned.cells])
    store: "GridStore | None" = _configurable(config).get("store")
    if store is not None:
        store.save(grid)
    return {"grid": grid, "batch": planned.cells}


def route_after_plan(state: GridLoopState) -> str:
    return "run_batch" if state["batch"] else END


def run_node(state: GridLoopState, config: RunnableConfig) -> dict[str, Any]:
    configurable = _configurable(config)
    runner: CellRunnerFn = configurable["runner"]
    n_workers = max(1, int(configurable.get("n_workers", 1)))
    batch = state["batch"]
    if n_workers == 1:
        results = [runner(cell) for cell in batch]
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(runner, batch))
    return {"results": list(zip(batch, results))}


def record_node(state: GridLoopState, config: RunnableConfig) -> dict[str, Any]:
    store: "GridStore | None" = _configurable(config).get("store")
    grid = state["grid"]
    for cell, result in state["results"]:
        grid = record(grid, cell, result)
        logger.info("cell=%s f1=%.4f", cell.slug, grid.cell(cell.key).f1)
        if store is not None:
            store.save_result(cell, result)
    if store is not None:
        store.save(grid)
    return {"grid": grid, "batch": [], "results": []}


def build_grid_graph():
    """Compile the plan/run/record loop."""
    graph = StateGraph(GridLoopState)

    graph.add_node("plan_batch", plan_node)
    graph.add_node("run_batch", run_node)
    graph.add_node("record_results", record_node)

    graph.add_edge(START, "plan_batch")
    graph.add_conditional_edges(
        "plan_batch",
        route_after_plan,
        {"run_batch": "run_batch", END: END},
    )
    graph.add_edge("run_batch", "record_results")
    graph.add_edge("record_results", "plan_batch")

    return graph.compile()


def run_grid(
    grid: GridState,
    runner: CellRunnerFn,
    store: "GridStore | None" = None,
    n_workers: int = 1,
) -> GridState:
    """Run batches until the grid is complete or the budget is spent."""
    final = build_grid_graph().invoke(
        {"grid": grid, "batch": [], "results": []},
        config={
            "configurable": {"runner": runner, "store": store, "n_workers": n_workers},
            "recursion_limit": RECURSION_LIMIT,
        },
    )
    return final["grid"]
