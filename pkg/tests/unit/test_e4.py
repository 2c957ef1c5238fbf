import numpy as np
import pytest
from pydantic import ValidationError

from src.core.exceptions import DataFormatError, RateMismatchError
from src.e4.explore import plot_histograms, summarize_sessions
from src.e4.reader import read_cohort, read_session, write_cohort, write_session
from src.e4.synthetic import MIN_SESSION_S, SyntheticConfig, _tag_offsets, generate_cohort, generate_session
from src.e4.types import CANONICAL_RATES, ChannelKind, ChannelRecording, Session


class TestChannelRecording:

    def test_rejects_non_canonical_rate(self):
        with pytest.raises(ValueError, match="rate mismatch"):
            ChannelRecording(ChannelKind.EDA, 0.0, 8.0, np.zeros(10))

    def test_rejects_non_finite_samples(self):
        with pytest.raises(ValueError, match="non-finite"):
            ChannelRecording(ChannelKind.HR, 0.0, 1.0, np.array([60.0, np.nan]))

    def test_end_time(self):
        ch = ChannelRecording(ChannelKind.BVP, 100.0, 64.0, np.zeros(128))
        assert ch.end_time == 102.0


class TestSession:

    def test_tags_outside_span_rejected(self, small_cohort):
        session = small_cohort[0]
        with pytest.raises(ValueError, match="outside recorded span"):
            Session(session.subject_id, 1, session.channels, tags=[session.span[1] + 10.0])

    def test_missing_channel_rejected(self, small_cohort):
        channels = dict(small_cohort[0].channels)
        del channels[ChannelKind.TEMP]
        with pytest.raises(ValueError, match="missing channels: TEMP"):
            Session("S01", 1, channels)


class TestSynthetic:

    def test_dense_tags_stay_strictly_increasing(self):
        cfg = SyntheticConfig(session_duration_s=MIN_SESSION_S, events_per_session=450)
        for seed in range(20):
            offsets = _tag_offsets(cfg, np.random.default_rng(seed))
            assert len(offsets) == 450
            assert np.all(np.diff(offsets) > 0)
            assert offsets[0] >= 600.0 and offsets[-1] <= MIN_SESSION_S - 300.0

    def test_too_many_events_rejected(self):
        with pytest.raises(ValidationError, match="between tags"):
            SyntheticConfig(session_duration_s=MIN_SESSION_S, events_per_session=451)

    def test_cohort_size_and_order(self, small_config, small_cohort):
        assert len(small_cohort) == small_config.n_subjects * small_config.weeks_per_subject
        assert [(s.subject_id, s.week_index) for s in small_cohort[:2]] == [("S01", 1), ("S01", 2)]

    def test_deterministic(self, small_config):
        a = generate_session(small_config, "S02", 2)
        b = generate_session(small_config, "S02", 2)
        assert np.array_equal(a.tags, b.tags)
        for kind in ChannelKind:
            assert np.array_equal(a.channels[kind].samples, b.channels[kind].samples)

    def test_channel_rates_and_duration(self, small_config, small_cohort):
        for kind, ch in small_cohort[0].channels.items():
            assert ch.sample_rate == CANONICAL_RATES[kind]
            assert len(ch.samples) == int(small_config.session_duration_s * CANONICAL_RATES[kind])

    def test_tags_leave_room_for_longest_window_and_lead(self, small_cohort):
        for session in small_cohort:
            start, _ = session.span
            assert len(session.tags) == 3
            assert np.all(session.tags - start >= 600.0)

    def test_baseline_only_in_first_week(self, small_cohort):
        by_week = {s.week_index: s for s in small_cohort if s.subject_id == "S01"}
        assert [b.label for b in by_week[1].baseline_intervals] == ["relax", "dance"]
        assert by_week[2].baseline_intervals == []

    def test_weeks_start_on_distinct_days(self, small_cohort):
        starts = {s.week_index: s.span[0] for s in small_cohort if s.subject_id == "S01"}
        assert starts[2] - starts[1] == pytest.approx(7 * 86_400.0)

    def test_zero_subjects_rejected(self):
        with pytest.raises(ValueError):
            SyntheticConfig(n_subjects=0)

    def test_short_session_rejected(self):
        with pytest.raises(ValueError, match="session_duration_s"):
            SyntheticConfig(session_duration_s=MIN_SESSION_S - 1)


class TestReadWrite:

    def test_write_then_read_keeps_tags_and_rates(self, tmp_path, small_cohort):
        session = small_cohort[0]
        write_session(session, tmp_path / "S01" / "week_1")
        loaded = read_session(tmp_path / "S01" / "week_1", week_index=1)
        assert loaded.subject_id == "S01"
        assert np.allclose(loaded.tags, session.tags, atol=1e-6)
        assert loaded.channels[ChannelKind.ACC_Y].sample_rate == 32.0
        assert np.allclose(
            loaded.channels[ChannelKind.EDA].samples, session.channels[ChannelKind.EDA].samples, rtol=1e-8
        )
        assert [b.label for b in loaded.baseline_intervals] == ["relax", "dance"]

    def test_cohort_tree_is_byte_identical_on_rewrite(self, tmp_path, small_config):
        sessions = generate_cohort(small_config.model_copy(update={"n_subjects": 1, "weeks_per_subject": 1}))
        write_cohort(sessions, tmp_path / "a")
        write_cohort(sessions, tmp_path / "b")
        for path in sorted((tmp_path / "a").rglob("*.csv")):
            twin = tmp_path / "b" / path.relative_to(tmp_path / "a")
            assert path.read_bytes() == twin.read_bytes()

    def test_read_cohort_orders_subject_and_week(self, tmp_path, small_cohort):
        write_cohort(small_cohort[:4], tmp_path)
        loaded = read_cohort(tmp_path)
        assert [(s.subject_id, s.week_index) for s in loaded] == [("S01", 1), ("S01", 2), ("S02", 1), ("S02", 2)]

    def test_read_cohort_empty_directory(self, tmp_path):
        with pytest.raises(DataFormatError, match="no session directories"):
            read_cohort(tmp_path)

    def test_rate_mismatch_reports_file(self, tmp_path, small_cohort):
        directory = tmp_path / "S01" / "week_1"
        write_session(small_cohort[0], directory)
        lines = (directory / "EDA.csv").read_text().splitlines()
        lines[1] = "8.000000"
        (directory / "EDA.csv").write_text("\n".join(lines) + "\n")
        with pytest.raises(RateMismatchError, match="EDA.csv"):
            read_session(directory)

    def test_non_numeric_line_reports_position(self, tmp_path, small_cohort):
        directory = tmp_path / "S01" / "week_1"
        write_session(small_cohort[0], directory)
        lines = (directory / "HR.csv").read_text().splitlines()
        lines[5] = "abc"
        (directory / "HR.csv").write_text("\n".join(lines) + "\n")
        with pytest.raises(DataFormatError) as info:
            read_session(directory)
        assert info.value.line == 6


class TestExplore:

    def test_summary_has_row_per_channel(self, small_cohort):
        summary = summarize_sessions(small_cohort[:2])
        assert len(summary) >= 2 * len(ChannelKind)

    def test_histograms_written(self, tmp_path, small_cohort):
        path = plot_histograms(small_cohort[:1], tmp_path / "hist.svg")
        assert path.read_text().startswith("<?xml")
