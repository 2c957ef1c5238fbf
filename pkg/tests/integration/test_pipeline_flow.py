"""
End-to-end runs through the command line on a small synthetic cohort.
"""
import json
from pathlib import Path

import pytest

from src.cli.app import EXIT_OK, main
from src.persistence.grid_store import GridStore
from src.trainflow.run import RunResult

QUICK_CONFIG = {
    "root_seed": 3,
    "generate": {
        "seed": 3,
        "n_subjects": 3,
        "weeks_per_subject": 2,
        "session_duration_s": 1800.0,
        "events_per_session": 3,
        "event_effect": {"eda": 2.0, "hr": 25.0, "temp": 0.8, "bvp": 0.8, "response_s": 120.0},
        "noise_scale": 0.5,
    },
    "preprocess": {"window_lengths": [60, 300], "target_rates": [4], "lead_times": [0]},
    "train": {"max_epochs": 2, "early_stop_patience": 1},
    "pretrain": {
        "subjects_per_corpus": 2,
        "session_duration_s": 1800.0,
        "autoencoder_epochs": 1,
        "train": {"max_epochs": 2, "early_stop_patience": 1},
    },
    "run": {"n_seeds": 1},
    "grid": {"budget": 2},
}


@pytest.fixture(scope="module")
def workspace(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("flow")
    (root / "config.json").write_text(json.dumps(QUICK_CONFIG))
    config, data, out = str(root / "config.json"), str(root / "data"), str(root / "gen")
    argv = ["--config", config, "--data-dir", data, "--output-dir", out]
    assert main(argv + ["generate"]) == EXIT_OK
    return root


def run_pipeline(root: Path, name: str) -> Path:
    out = root / name
    common = ["--config", str(root / "config.json"), "--data-dir", str(root / "data"), "--output-dir", str(out)]
    for command in ("preprocess", "tune-activity", "pretrain", "grid", "report"):
        assert main(common + [command]) == EXIT_OK, command
    return out


@pytest.mark.slow
class TestPipelineFlow:

    def test_full_flow(self, workspace):
        out = run_pipeline(workspace, "first")
        assert sorted(p.name for p in (out / "datasets").iterdir()) == ["w300_r4_lead0.csv", "w60_r4_lead0.csv"]
        assert (out / "activity_model.json").exists()
        assert (out / "pretrained" / "pretrained_60s_4hz.npz").exists()

        state = GridStore(out / "grid").load()
        done = state.with_status("done")
        assert [cell.key for cell in done] == [(0, 0, 0), (0, 1, 0)]
        for cell in done:
            result = RunResult.model_validate_json((out / "grid" / "results" / f"{cell.slug}.json").read_text())
            assert result.seeds == [0]
            assert 0.0 <= result.report.f1_mean <= 1.0
            assert bool(result.gate_reports) == (cell.mode.scheme != "direct")

        report_table = (out / "report" / "table.csv").read_text()
        assert report_table == (out / "grid" / "table.csv").read_text()
        assert {p.name for p in (out / "manifests").iterdir()} >= {"grid.json", "pretrain.json", "report.json"}

    def test_reruns_are_identical(self, workspace):
        first = run_pipeline(workspace, "again_a")
        second = run_pipeline(workspace, "again_b")
        assert (first / "grid" / "table.csv").read_bytes() == (second / "grid" / "table.csv").read_bytes()
        for path in sorted((first / "grid" / "results").glob("*.json")):
            assert path.read_bytes() == (second / "grid" / "results" / path.name).read_bytes()

    def test_grid_resumes_from_disk(self, workspace):
        out = run_pipeline(workspace, "resume")
        common = ["--config", str(workspace / "config.json"), "--data-dir", str(workspace / "data")]
        assert main(common + ["--output-dir", str(out), "grid", "--budget", "3"]) == EXIT_OK
        state = GridStore(out / "grid").load()
        assert state.emitted_count == 3
        assert [record.key for record in state.history][:2] == [(0, 0, 0), (0, 1, 0)]
