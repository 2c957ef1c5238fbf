import numpy as np
import pytest

from src.core.exceptions import ConfigError, InsufficientDataError
from src.core.seeds import substream
from src.e4.synthetic import MIN_SESSION_S
from src.nn.model import ModelParams
from src.nn.train import TrainConfig
from src.trainflow.config import PretrainConfig, RunConfig
from src.trainflow.corpora import STANDIN_PROFILES, PretrainCorpus, build_standin_corpora
from src.trainflow.modes import MODE_ORDER, ApplicationMode
from src.trainflow.pretrain import params_filename, pretrain
from src.trainflow.run import run_mode, target_examples

QUICK_TRAIN = TrainConfig(max_epochs=3, early_stop_patience=2)


@pytest.fixture
def quick_config() -> RunConfig:
    return RunConfig(window_len_s=60, lead_time_s=0, activity_gate=False, seeds=[0], root_seed=5, train=QUICK_TRAIN)


@pytest.fixture
def pretrained() -> ModelParams:
    return ModelParams.init(substream(1, "init", "test"))


class TestModes:

    def test_five_modes_in_table_order(self):
        assert [mode.value for mode in MODE_ORDER] == [
            "PretrainedDirect",
            "PretrainedRandomFT",
            "PretrainedPersonalizedFT",
            "UninitRandom",
            "UninitPersonalized",
        ]

    @pytest.mark.parametrize(
        "mode, scheme, uses_pretrained",
        [
            (ApplicationMode.PRETRAINED_DIRECT, "direct", True),
            (ApplicationMode.PRETRAINED_RANDOM_FT, "random", True),
            (ApplicationMode.PRETRAINED_PERSONALIZED_FT, "personalized", True),
            (ApplicationMode.UNINIT_RANDOM, "random", False),
            (ApplicationMode.UNINIT_PERSONALIZED, "personalized", False),
        ],
    )
    def test_scheme_and_initialization(self, mode, scheme, uses_pretrained):
        assert mode.scheme == scheme
        assert mode.pretrained is uses_pretrained


class TestRunConfig:

    def test_window_config(self):
        cfg = RunConfig(window_len_s=300, lead_time_s=120, target_rate_hz=64, root_seed=3)
        window = cfg.window_config()
        assert (window.window_len_s, window.lead_time_s, window.target_rate_hz, window.seed) == (300, 120, 64, 3)

    def test_ten_seeds_by_default(self):
        assert RunConfig().seeds == list(range(10))

    def test_empty_seed_list_rejected(self):
        with pytest.raises(ValueError):
            RunConfig(seeds=[])


class TestCorpora:

    def test_four_standins(self):
        cfg = PretrainConfig(subjects_per_corpus=2, session_duration_s=MIN_SESSION_S)
        corpora = build_standin_corpora(cfg, root_seed=1)
        assert [c.name for c in corpora] == [p.name for p in STANDIN_PROFILES]
        assert all(len({s.subject_id for s in c.sessions}) == 2 for c in corpora)
        assert all(not s.baseline_intervals for c in corpora for s in c.sessions)

    def test_corpora_differ(self):
        cfg = PretrainConfig(subjects_per_corpus=2, session_duration_s=MIN_SESSION_S)
        first, second = build_standin_corpora(cfg)[:2]
        a, b = first.sessions[0].channels, second.sessions[0].channels
        assert not all(np.array_equal(a[kind].samples, b[kind].samples) for kind in a)

    def test_single_subject_corpus_rejected(self, small_cohort):
        with pytest.raises(InsufficientDataError, match=">= 2 subjects"):
            PretrainCorpus("one", [small_cohort[0]])


class TestPretrain:

    def test_leave_one_corpus_out(self):
        cfg = PretrainConfig(
            subjects_per_corpus=2,
            session_duration_s=MIN_SESSION_S,
            autoencoder_epochs=1,
            train=TrainConfig(max_epochs=2, early_stop_patience=1),
        )
        result = pretrain(build_standin_corpora(cfg), cfg, window_len_s=60, root_seed=2)
        assert [fold.held_out_corpus for fold in result.folds] == [p.name for p in STANDIN_PROFILES]
        assert all(0.0 <= fold.f1 <= 1.0 for fold in result.folds)
        assert result.params.signal_length == 240

    def test_needs_two_corpora(self, small_cohort):
        corpus = PretrainCorpus("only", small_cohort)
        with pytest.raises(InsufficientDataError, match=">= 2 corpora"):
            pretrain([corpus], PretrainConfig())

    def test_params_filename(self):
        assert params_filename(300, 4) == "pretrained_300s_4hz.npz"


class TestRunMode:

    def test_direct_leaves_weights_unchanged(self, small_cohort, quick_config, pretrained):
        snapshot = pretrained.copy()
        result = run_mode(ApplicationMode.PRETRAINED_DIRECT, small_cohort, pretrained, quick_config)
        assert pretrained.equals(snapshot)
        assert result.report.counts.total == len(target_examples(small_cohort, quick_config))
        assert result.mode == ApplicationMode.PRETRAINED_DIRECT
        assert len(result.per_seed_f1) == 1

    def test_direct_scores_every_target_example(self, small_cohort, quick_config, pretrained):
        cfg = quick_config.model_copy(update={"activity_gate": True})
        result = run_mode(ApplicationMode.PRETRAINED_DIRECT, small_cohort, pretrained, cfg)
        assert result.report.counts.total == len(target_examples(small_cohort, cfg))
        assert result.gate_reports == []
        assert result.activity_comparison is not None

    def test_fine_tuning_does_not_touch_pretrained(self, small_cohort, quick_config, pretrained):
        snapshot = pretrained.copy()
        run_mode(ApplicationMode.PRETRAINED_RANDOM_FT, small_cohort, pretrained, quick_config)
        assert pretrained.equals(snapshot)

    def test_pretrained_mode_requires_params(self, small_cohort, quick_config):
        with pytest.raises(ConfigError, match="needs pretrained"):
            run_mode(ApplicationMode.PRETRAINED_DIRECT, small_cohort, None, quick_config)

    def test_uninit_mode_rejects_params(self, small_cohort, quick_config, pretrained):
        with pytest.raises(ConfigError, match="from scratch"):
            run_mode(ApplicationMode.UNINIT_RANDOM, small_cohort, pretrained, quick_config)

    def test_uninit_random_is_seeded(self, small_cohort, quick_config):
        a = run_mode(ApplicationMode.UNINIT_RANDOM, small_cohort, None, quick_config)
        b = run_mode(ApplicationMode.UNINIT_RANDOM, small_cohort, None, quick_config)
        assert a.per_seed_f1 == b.per_seed_f1
        assert a.report.roc_points == b.report.roc_points

    def test_personalized_evaluates_every_subject(self, small_cohort, quick_config):
        result = run_mode(ApplicationMode.UNINIT_PERSONALIZED, small_cohort, None, quick_config)
        assert [fold.held_out_subject for fold in result.folds] == ["S01", "S02", "S03"]
        assert result.per_seed_f1[0] == pytest.approx(np.mean([fold.f1 for fold in result.folds]))

    def test_gate_reports_collected(self, small_cohort, quick_config):
        cfg = quick_config.model_copy(update={"activity_gate": True})
        result = run_mode(ApplicationMode.UNINIT_RANDOM, small_cohort, None, cfg)
        assert len(result.gate_reports) == 1
        assert result.activity_comparison is not None
        assert result.condition.activity_gate

    def test_gate_without_baseline_or_model(self, small_cohort, quick_config):
        later_weeks = [s for s in small_cohort if s.week_index > 1]
        cfg = quick_config.model_copy(update={"activity_gate": True})
        with pytest.raises(ConfigError, match="activity gate"):
            run_mode(ApplicationMode.UNINIT_RANDOM, later_weeks, None, cfg)

    def test_target_examples_are_standardized(self, small_cohort, quick_config):
        examples = target_examples(small_cohort[:2], quick_config)
        assert examples
        assert np.allclose(examples[0].signal.mean(axis=1), 0.0, atol=1e-6)
