import numpy as np
import pytest
from scipy import signal

from src.core.exceptions import FilterDesignError
from src.dsp.filters import (
    apply_filter,
    design_butterworth_bandpass,
    design_butterworth_lowpass,
    magnitude_response,
)
from src.dsp.pipeline import PREPROCESSING_PLAN, FilteredChannel, TimedSignal, preprocess_session
from src.dsp.resample import output_length, resample_fourier, resample_linear
from src.e4.types import CANONICAL_RATES, PHYSIO_CHANNELS, ChannelKind

SQRT_HALF = 1 / np.sqrt(2)


@pytest.fixture
def eda_lowpass():
    return design_butterworth_lowpass(6, 1.0, 4.0)


@pytest.fixture
def bvp_bandpass():
    return design_butterworth_bandpass(2, 2.0, 12.0, 64.0)


class TestFilterDesign:

    def test_lowpass_half_power_at_cutoff(self, eda_lowpass):
        assert magnitude_response(eda_lowpass, 1.0) == pytest.approx(SQRT_HALF, abs=1e-5)

    def test_lowpass_dc_gain(self, eda_lowpass):
        assert magnitude_response(eda_lowpass, 0.0) == pytest.approx(1.0, abs=1e-9)

    def test_lowpass_is_three_biquads(self, eda_lowpass):
        assert len(eda_lowpass.biquads) == 3

    def test_bandpass_half_power_at_both_edges(self, bvp_bandpass):
        assert magnitude_response(bvp_bandpass, 2.0) == pytest.approx(SQRT_HALF, abs=1e-3)
        assert magnitude_response(bvp_bandpass, 12.0) == pytest.approx(SQRT_HALF, abs=1e-3)

    def test_bandpass_blocks_dc(self, bvp_bandpass):
        assert magnitude_response(bvp_bandpass, 0.0) < 1e-9

    def test_bandpass_peak_gain_at_most_one(self, bvp_bandpass):
        gains = magnitude_response(bvp_bandpass, np.linspace(2.0, 12.0, 501))
        assert gains.max() <= 1 + 1e-6

    def test_poles_inside_unit_circle(self, eda_lowpass, bvp_bandpass):
        assert np.all(np.abs(eda_lowpass.poles()) < 1)
        assert np.all(np.abs(bvp_bandpass.poles()) < 1)

    def test_impulse_response_spectrum_matches(self, eda_lowpass):
        n = 4096
        impulse = np.zeros(n)
        impulse[0] = 1.0
        spectrum = np.abs(np.fft.rfft(apply_filter(eda_lowpass, impulse)))
        freqs = np.fft.rfftfreq(n, d=1 / 4.0)
        assert np.max(np.abs(spectrum - magnitude_response(eda_lowpass, freqs))) < 1e-3

    @pytest.mark.parametrize(
        "args",
        [(0, 1.0, 4.0), (6, 2.0, 4.0), (6, 0.0, 4.0), (6, 3.0, 4.0)],
    )
    def test_invalid_lowpass_rejected(self, args):
        with pytest.raises(FilterDesignError):
            design_butterworth_lowpass(*args)

    def test_invalid_bandpass_rejected(self):
        with pytest.raises(FilterDesignError, match="Nyquist"):
            design_butterworth_bandpass(2, 2.0, 32.0, 64.0)
        with pytest.raises(FilterDesignError, match="low < high"):
            design_butterworth_bandpass(2, 12.0, 2.0, 64.0)

    def test_response_outside_nyquist_rejected(self, eda_lowpass):
        with pytest.raises(ValueError):
            magnitude_response(eda_lowpass, 3.0)


class TestApplyFilter:

    def test_lowpass_converges_to_constant(self, eda_lowpass):
        out = apply_filter(eda_lowpass, np.full(240, 3.5))
        assert len(out) == 240
        assert np.max(np.abs(out[180:] - 3.5)) < 1e-6

    def test_bandpass_converges_to_zero(self, bvp_bandpass):
        out = apply_filter(bvp_bandpass, np.full(60 * 64, 3.5))
        assert np.max(np.abs(out[-len(out) // 4:])) < 1e-6

    def test_causal(self, eda_lowpass):
        x = np.zeros(100)
        x[50] = 1.0
        assert np.all(apply_filter(eda_lowpass, x)[:50] == 0.0)

    def test_rejects_non_finite(self, eda_lowpass):
        with pytest.raises(ValueError, match="non-finite"):
            apply_filter(eda_lowpass, np.array([1.0, np.inf]))

    def test_rejects_empty(self, eda_lowpass):
        with pytest.raises(ValueError):
            apply_filter(eda_lowpass, np.array([]))


class TestResample:

    def test_output_length_rounds_halves_up(self):
        assert output_length(3, 4.0, 2.0) == 2
        assert output_length(1800, 1.0, 4.0) == 7200

    def test_constant_upsampled(self):
        out = resample_fourier(np.ones(4), 4.0, 64.0)
        assert len(out) == 64
        assert np.max(np.abs(out - 1.0)) < 1e-9

    def test_periodic_sine_matches_analytic(self):
        t_in = np.arange(32) / 4.0
        out = resample_fourier(np.sin(2 * np.pi * 0.5 * t_in), 4.0, 64.0)
        t_out = np.arange(512) / 64.0
        assert np.max(np.abs(out - np.sin(2 * np.pi * 0.5 * t_out))) < 1e-6

    def test_bandlimited_round_trip(self):
        t = np.arange(1024) / 64.0
        x = 1.0 + np.sin(2 * np.pi * 0.25 * t) + 0.5 * np.cos(2 * np.pi * 1.25 * t + 0.4)
        down = resample_fourier(x, 64.0, 4.0)
        assert len(down) == 64
        assert np.max(np.abs(resample_fourier(down, 4.0, 64.0) - x)) < 1e-6

    def test_same_rate_copies(self):
        x = np.arange(10.0)
        out = resample_fourier(x, 4.0, 4.0)
        assert np.array_equal(out, x)
        assert out is not x

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            resample_fourier(np.array([]), 4.0, 64.0)

    def test_linear_ramp_exact(self):
        x = 3.0 + 2.0 * np.arange(10)
        out = resample_linear(x, 1.0, 4.0)
        t_out = np.arange(40) / 4.0
        interior = t_out <= 9.0
        assert np.max(np.abs(out[interior] - (3.0 + 2.0 * t_out[interior]))) < 1e-12

    def test_linear_holds_last_value(self):
        out = resample_linear(np.array([0.0, 1.0]), 1.0, 4.0)
        assert np.all(out[-3:] == 1.0)

    def test_linear_needs_two_samples(self):
        with pytest.raises(ValueError, match="at least 2"):
            resample_linear(np.array([1.0]), 1.0, 4.0)


class TestPipeline:

    def test_plan_covers_physio_channels(self):
        assert set(PREPROCESSING_PLAN) == set(PHYSIO_CHANNELS)
        assert PREPROCESSING_PLAN[ChannelKind.HR].filter is None

    def test_channels_filtered_at_native_rate(self, small_cohort, small_config):
        processed = preprocess_session(small_cohort[0], 4.0)
        for kind in PHYSIO_CHANNELS:
            channel = processed.physio[kind]
            assert channel.signal.sample_rate == CANONICAL_RATES[kind]
            assert len(channel.signal.samples) == int(small_config.session_duration_s * CANONICAL_RATES[kind])
            assert channel.resample == PREPROCESSING_PLAN[kind].resample
        assert processed.acc.shape == (3, int(small_config.session_duration_s * 32))

    def test_windows_at_target_rate(self, small_processed):
        session = small_processed[0]
        window = session.physio_window(session.span[0] + 600.0, 60.0)
        assert window.shape == (4, 240)
        assert session.physio_window(session.span[1] - 30.0, 60.0) is None

    def test_window_resampled_in_isolation(self, small_processed):
        bvp = small_processed[0].physio[ChannelKind.BVP]
        start = bvp.signal.start_time + 120.0
        native = bvp.signal.slice(start, 64 * 60)
        expected = np.real(signal.resample(native, 240))
        assert np.allclose(bvp.window(start, 60.0, 4.0), expected, rtol=0, atol=1e-12)

    def test_window_ignores_neighbouring_samples(self):
        rng = np.random.default_rng(3)
        samples = rng.standard_normal(64 * 180)
        perturbed = samples.copy()
        perturbed[: 64 * 60] += 100.0
        perturbed[64 * 120 :] -= 100.0
        a = FilteredChannel(ChannelKind.BVP, TimedSignal(0.0, 64.0, samples), "fourier")
        b = FilteredChannel(ChannelKind.BVP, TimedSignal(0.0, 64.0, perturbed), "fourier")
        assert np.array_equal(a.window(60.0, 60.0, 4.0), b.window(60.0, 60.0, 4.0))

    def test_batch_equals_single(self, small_cohort, small_processed):
        single = preprocess_session(small_cohort[1], 4.0)
        for kind in PHYSIO_CHANNELS:
            assert np.array_equal(single.physio[kind].signal.samples, small_processed[1].physio[kind].signal.samples)

    def test_timed_signal_slice(self):
        sig = TimedSignal(100.0, 4.0, np.arange(40.0))
        assert np.array_equal(sig.slice(101.0, 4), [4.0, 5.0, 6.0, 7.0])
        assert sig.slice(99.0, 4) is None
        assert sig.slice(109.5, 4) is None

    def test_acc_slice_bounds(self, small_processed):
        session = small_processed[0]
        assert session.acc_slice(session.acc_start_time, 60.0).shape == (3, 1920)
        assert session.acc_slice(session.acc_start_time - 1.0, 60.0) is None
