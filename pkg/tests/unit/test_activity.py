import numpy as np
import pytest

from src.activity.baseline import baseline_windows, cohort_baseline_windows
from src.activity.features import (
    ActivityMethod,
    acc_magnitude,
    feature_dominant_freq,
    feature_std,
    window_feature,
)
from src.activity.gate import annotate, compare_with_predictions, gate_dataset
from src.activity.model import (
    ActivityModel,
    balanced_accuracy,
    baseline_score,
    classify,
    load_model,
    save_model,
    sweep_thresholds,
    tune,
)
from src.core.exceptions import InsufficientDataError, ShapeError
from src.windowing.types import EVENT, NONEVENT, event_fraction

N_ACC = 1920


def resting_acc(seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    acc = np.zeros((3, N_ACC))
    acc[2] = 64.0
    return acc + 0.2 * rng.standard_normal((3, N_ACC))


def dancing_acc(seed: int) -> np.ndarray:
    t = np.arange(N_ACC) / 32.0
    phase = np.random.default_rng(seed).uniform(0, 2 * np.pi)
    return resting_acc(seed) + 32.0 * np.sin(2 * np.pi * 2.0 * t + phase)


@pytest.fixture
def std_model() -> ActivityModel:
    return ActivityModel(method=ActivityMethod.STD_DEV, threshold=0.1, window_len_s=60)


@pytest.fixture
def planted(make_example):
    """10 events, 20 non-events; 9 of the non-events carry activity (30%)."""
    examples = [make_example(label=EVENT, window_start=600.0 * i, acc_window=resting_acc(i)) for i in range(10)]
    for i in range(20):
        acc = dancing_acc(100 + i) if i < 9 else resting_acc(100 + i)
        examples.append(make_example(label=NONEVENT, window_start=600.0 * (10 + i), acc_window=acc))
    return examples


@pytest.fixture
def clean_pool(make_example):
    return [
        make_example(label=NONEVENT, subject_id="S02", window_start=60.0 * i, acc_window=resting_acc(500 + i))
        for i in range(15)
    ]


class TestFeatures:

    def test_magnitude_in_g(self):
        acc = np.array([[0.0, 64.0], [0.0, 0.0], [64.0, 0.0]])
        assert np.allclose(acc_magnitude(acc), [1.0, 1.0])

    def test_std_worked_case(self):
        assert feature_std(np.array([1.0, 1.0, 1.0, 3.0])) == pytest.approx(np.sqrt(0.75))

    def test_dominant_frequency_of_sine(self):
        t = np.arange(128) / 32.0
        assert feature_dominant_freq(1.0 + np.sin(2 * np.pi * 2.0 * t)) == pytest.approx(2.0)

    def test_flat_signal_has_zero_frequency(self):
        assert feature_dominant_freq(np.ones(64)) == 0.0

    def test_short_inputs_rejected(self):
        with pytest.raises(ValueError):
            feature_std(np.array([1.0]))
        with pytest.raises(ValueError):
            feature_dominant_freq(np.array([1.0, 2.0]))

    def test_wrong_axis_count_rejected(self):
        with pytest.raises(ShapeError, match="3 x N"):
            acc_magnitude(np.zeros((2, 10)))

    def test_dancing_window_scores_higher(self):
        dancing, resting = dancing_acc(1), resting_acc(1)
        assert window_feature(dancing, ActivityMethod.STD_DEV) > window_feature(resting, ActivityMethod.STD_DEV)
        assert window_feature(dancing, ActivityMethod.DOMINANT_FREQ) == pytest.approx(2.0)


class TestTune:

    def test_synthetic_baseline_is_separable(self, small_cohort):
        windows = cohort_baseline_windows(small_cohort, 60)
        model = tune(windows)
        assert baseline_score(windows, model) >= 0.95
        assert model.window_len_s == 60

    def test_baseline_tiles_intervals(self, small_cohort):
        windows = baseline_windows(small_cohort[0], 60)
        assert [w.label for w in windows].count("relax") == 5
        assert [w.label for w in windows].count("dance") == 5
        assert all(w.acc_window.shape == (3, N_ACC) for w in windows)

    def test_later_weeks_have_no_baseline(self, small_cohort):
        assert baseline_windows(small_cohort[1], 60) == []

    def test_missing_label_rejected(self, small_cohort):
        relax_only = [w for w in baseline_windows(small_cohort[0], 60) if w.label == "relax"]
        with pytest.raises(InsufficientDataError, match="dance"):
            tune(relax_only)

    def test_sweep_finds_separating_threshold(self):
        features = np.array([0.1, 0.2, 0.3, 1.0, 1.1])
        active = np.array([False, False, False, True, True])
        threshold, score = sweep_thresholds(features, active)
        assert 0.3 < threshold < 1.0
        assert score == 1.0

    def test_balanced_accuracy(self):
        predicted = np.array([True, False, False, False])
        active = np.array([True, True, False, False])
        assert balanced_accuracy(predicted, active) == 0.75

    def test_save_load(self, tmp_path, std_model):
        assert load_model(save_model(std_model, tmp_path / "m.json")) == std_model


class TestGate:

    def test_classify_needs_acc(self, make_example, std_model):
        with pytest.raises(ShapeError):
            classify(make_example(), std_model)

    def test_annotate_sets_flags(self, planted, std_model):
        flags = [ex.activity for ex in annotate(planted, std_model)]
        assert sum(flags) == 9

    def test_heavy_removal_resamples(self, planted, clean_pool, std_model):
        gated, report = gate_dataset(planted, std_model, clean_pool, seed=1)
        assert report.n_removed == 9
        assert report.removed_fraction == pytest.approx(0.3)
        assert report.resampled
        assert report.n_added == 9
        assert len(gated) == 30
        assert event_fraction(gated) == pytest.approx(1 / 3)
        assert not any(ex.activity for ex in gated)

    def test_light_removal_keeps_remainder(self, planted, clean_pool, std_model):
        light = planted[:10] + planted[13:]
        gated, report = gate_dataset(light, std_model, clean_pool, seed=1)
        assert report.removed_fraction == pytest.approx(6 / 27)
        assert not report.resampled
        assert len(gated) == 21

    def test_small_pool_reports_shortfall(self, planted, clean_pool, std_model):
        gated, report = gate_dataset(planted, std_model, clean_pool[:3], seed=1)
        assert report.shortfall == 6
        assert len(gated) == 24

    def test_deterministic(self, planted, clean_pool, std_model):
        a, _ = gate_dataset(planted, std_model, clean_pool, 1, "fold")
        b, _ = gate_dataset(planted, std_model, clean_pool, 1, "fold")
        assert [ex.key for ex in a] == [ex.key for ex in b]


class TestComparison:

    def test_counts(self):
        table = compare_with_predictions([True, True, False, False], [1, 0, 1, 1], [1, 0, 0, 1])
        assert table.count(True, 1, 1) == 1
        assert table.count(False, 1, 0) == 1
        assert sum(row.count for row in table.rows) == 4

    def test_merge_adds(self):
        table = compare_with_predictions([True], [1], [1])
        assert table.merge(table).count(True, 1, 1) == 2

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            compare_with_predictions([True], [1, 0], [1])
