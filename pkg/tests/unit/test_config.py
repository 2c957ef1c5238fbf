import json
from pathlib import Path
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from src.core.config import PipelineConfig, Settings, load_config, read_config_file
from src.core.exceptions import ConfigError

DESK_CONFIG = Path(__file__).resolve().parents[2] / "configs" / "desk.json"


@pytest.fixture
def config_file(tmp_path) -> Path:
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"root_seed": 1, "grid": {"budget": 30}, "run": {"n_seeds": 2}}))
    return path


class TestPipelineConfig:

    def test_defaults(self):
        cfg = PipelineConfig()
        assert cfg.grid.budget is None
        assert cfg.run.n_seeds == 10
        assert cfg.preprocess.window_lengths == [60, 300]
        assert cfg.preprocess.lead_times == [0, 60, 120, 180, 240, 300]

    def test_run_config(self):
        cfg = PipelineConfig(root_seed=4)
        run = cfg.run_config(300, 120, activity_gate=False)
        assert run.seeds == list(range(10))
        assert (run.window_len_s, run.lead_time_s, run.activity_gate, run.root_seed) == (300, 120, False, 4)
        assert run.train == cfg.train

    def test_unknown_lead_rejected(self):
        with pytest.raises(ValidationError):
            PipelineConfig.model_validate({"preprocess": {"lead_times": [90]}})

    def test_desk_config_is_valid(self):
        cfg = load_config(DESK_CONFIG, Settings())
        assert cfg.root_seed == 7
        assert cfg.grid.budget == 25
        assert cfg.generate.n_subjects == 4


class TestLoadConfig:

    def test_file_values(self, config_file):
        with patch.dict("os.environ", {}, clear=True):
            cfg = load_config(config_file, Settings())
        assert cfg.root_seed == 1
        assert cfg.grid.budget == 30

    def test_environment_beats_file(self, config_file):
        with patch.dict("os.environ", {"WRISTCAST_ROOT_SEED": "2"}, clear=True):
            cfg = load_config(config_file, Settings())
        assert cfg.root_seed == 2
        assert cfg.run.n_seeds == 2

    def test_flags_beat_environment(self, config_file):
        with patch.dict("os.environ", {"WRISTCAST_ROOT_SEED": "2"}, clear=True):
            cfg = load_config(config_file, Settings(), {"root_seed": 3, "grid": {"budget": None}})
        assert cfg.root_seed == 3
        assert cfg.grid.budget == 30

    def test_config_path_from_environment(self, config_file):
        with patch.dict("os.environ", {"WRISTCAST_CONFIG_PATH": str(config_file)}, clear=True):
            cfg = load_config(None, Settings())
        assert cfg.grid.budget == 30

    def test_nested_override_keeps_siblings(self, config_file):
        with patch.dict("os.environ", {}, clear=True):
            cfg = load_config(config_file, Settings(), {"run": {"target_rate_hz": 64}})
        assert cfg.run.target_rate_hz == 64
        assert cfg.run.n_seeds == 2

    def test_invalid_value_raises_validation_error(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"run": {"n_seeds": 0}}))
        with pytest.raises(ValidationError):
            load_config(path, Settings())


class TestReadConfigFile:

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            read_config_file(tmp_path / "nope.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{root_seed: 1}")
        with pytest.raises(ConfigError, match="not valid JSON"):
            read_config_file(path)

    def test_non_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError, match="JSON object"):
            read_config_file(path)

    def test_manifest_unwrapped(self, tmp_path):
        path = tmp_path / "manifest.json"
        path.write_text(json.dumps({"command": "grid", "config": {"root_seed": 9}, "root_seed": 9}))
        assert read_config_file(path) == {"root_seed": 9}
