from unittest.mock import MagicMock

from langgraph.graph import END

from src.grid.coordinator import build_grid_graph, route_after_plan, run_grid
from src.grid.state import GridState
from src.persistence.grid_store import GridStore
from tests.mocks.mock_runner import MockCellRunner


class TestBuildGridGraph:

    def test_returns_compiled_graph(self):
        assert build_grid_graph() is not None

    def test_graph_has_expected_nodes(self):
        node_names = list(build_grid_graph().nodes.keys())
        assert "plan_batch" in node_names
        assert "run_batch" in node_names
        assert "record_results" in node_names


class TestRouteAfterPlan:

    def test_routes_nonempty_batch_to_runner(self):
        state = {"grid": GridState.fresh(), "batch": [GridState.fresh().cells[0]], "results": []}
        assert route_after_plan(state) == "run_batch"

    def test_routes_empty_batch_to_end(self):
        state = {"grid": GridState.fresh(), "batch": [], "results": []}
        assert route_after_plan(state) == END


class TestRunGrid:

    def test_unlimited_budget_fills_grid(self):
        runner = MockCellRunner()
        final = run_grid(GridState.fresh(), runner)
        assert len(final.with_status("done")) == 120
        assert len(runner.calls) == 120

    def test_budget_25_runs_lead0_then_best_row(self):
        runner = MockCellRunner()
        final = run_grid(GridState.fresh(budget=25), runner)
        assert len(runner.calls) == 25
        assert [batch.phase for batch in final.batches] == ["lead0", "row"]
        assert final.cell((0, 1, 300)).f1 == 0.75

    def test_parallel_workers_give_same_state(self):
        serial = run_grid(GridState.fresh(budget=44), MockCellRunner())
        parallel = run_grid(GridState.fresh(budget=44), MockCellRunner(), n_workers=4)
        assert serial.cells == parallel.cells
        assert serial.history == parallel.history

    def test_store_receives_state_and_results(self, tmp_path):
        store = GridStore(tmp_path)
        final = run_grid(GridState.fresh(budget=20), MockCellRunner(), store=store)
        assert store.load() == final
        assert len(list((tmp_path / "results").glob("*.json"))) == 20

    def test_runner_called_with_cells(self):
        runner = MagicMock(side_effect=MockCellRunner())
        run_grid(GridState.fresh(budget=20), runner)
        assert runner.call_count == 20
        assert all(call.args[0].lead_time_s == 0 for call in runner.call_args_list)
