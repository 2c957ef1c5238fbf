"""Per-channel preprocessing plan.

BVP is band-passed, EDA and TEMP are low-passed, HR stays unfiltered. BVP and
EDA change rate with the Fourier method, HR and TEMP with linear interpolation.
Filters run over the full continuous recording; rate conversion is applied
to each window on its own when the window is cut.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Literal

import numpy as np

from src.dsp.filters import FilterSpec, apply_filter, design_butterworth_bandpass, design_butterworth_lowpass
from src.dsp.resample import resample_fourier, resample_linear
from src.e4.types import ACC_CHANNELS, CANONICAL_RATES, PHYSIO_CHANNELS, ChannelKind, ChannelRecording, Session

logger = logging.getLogger(__name__)

ResampleMethod = Literal["fourier", "linear"]


@dataclass(frozen=True)
class FilterStage:
    kind: Literal["lowpass", "bandpass"]
    order: int
    cutoff_high: float
    cutoff_low: float | None = None

    def design(self, sample_rate: float) -> FilterSpec:
        return _design(self, sample_rate)


@dataclass(frozen=True)
class ChannelPlan:
    channel: ChannelKind
    filter: FilterStage | None
    resample: ResampleMethod


PREPROCESSING_PLAN: dict[ChannelKind, ChannelPlan] = {
    ChannelKind.BVP: ChannelPlan(ChannelKind.BVP, FilterStage("bandpass", 2, 12.0, 2.0), "fourier"),
    ChannelKind.EDA: ChannelPlan(ChannelKind.EDA, FilterStage("lowpass", 6, 1.0), "fourier"),
    ChannelKind.TEMP: ChannelPlan(ChannelKind.TEMP, FilterStage("lowpass", 6, 1.0), "linear"),
    ChannelKind.HR: ChannelPlan(ChannelKind.HR, None, "linear"),
}

RESAMPLERS: dict[ResampleMethod, Callable[[np.ndarray, float, float], np.ndarray]] = {
    "fourier": resample_fourier,
    "linear": resample_linear,
}


@lru_cache(maxsize=32)
def _design(stage: FilterStage, sample_rate: float) -> FilterSpec:
    match stage.kind:
        case "lowpass":
            return design_butterworth_lowpass(stage.order, stage.cutoff_high, sample_rate)
        case "bandpass":
            assert stage.cutoff_low is not None
            return design_butterworth_bandpass(stage.order, stage.cutoff_low, stage.cutoff_high, sample_rate)
        case _:
            raise ValueError(f"Unknown filter kind: {stage.kind}")


@dataclass(frozen=True)
class TimedSignal:
    start_time: float
    sample_rate: float
    samples: np.ndarray

    def index_of(self, t: float) -> int:
        """Sample index of time ``t`` (nearest sample, halves up)."""
        return int(np.floor((t - self.start_time) * self.sample_rate + 0.5))

    def slice(self, start: float, n_samples: int) -> np.ndarray | None:
        """``n_samples`` from ``start``; None when the slice leaves the recording."""
        first = self.index_of(start)
        if first < 0 or first + n_samples > len(self.samples):
            return None
        return self.samples[first : first + n_samples]


@dataclass(frozen=True)
class FilteredChannel:
    """A filtered channel at its native rate.

    Rate conversion happens per window: the window is cut at the native rate
    and only its own samples enter the resampler.
    """
    kind: ChannelKind
    signal: TimedSignal
    resample: ResampleMethod

    def window(self, start: float, duration_s: float, target_rate_hz: float) -> np.ndarray | None:
        n_native = int(np.floor(duration_s * self.signal.sample_rate + 0.5))
        native = self.signal.slice(start, n_native)
        if native is None:
            return None
        return RESAMPLERS[self.resample](native, self.signal.sample_rate, target_rate_hz)


@dataclass
class PreprocessedSession:
    """Filtered physiological channels (native rates) plus raw 32 Hz ACC.

    ``target_rate_hz`` is the rate every window is resampled to when cut.
    """
    subject_id: str
    week_index: int
    target_rate_hz: float
    physio: dict[ChannelKind, FilteredChannel]
    acc: np.ndarray
    acc_start_time: float
    tags: np.ndarray
    span: tuple[float, float]
    source: str = "target"
    baseline_intervals: list = field(default_factory=list)

    def physio_window(self, start: float, duration_s: float) -> np.ndarray | None:
        """Channels in PHYSIO_CHANNELS order, each resampled to the target rate on its own."""
        rows = []
        for kind in PHYSIO_CHANNELS:
            window = self.physio[kind].window(start, duration_s, self.target_rate_hz)
            if window is None:
                return None
            rows.append(window)
        return np.vstack(rows)

    def acc_slice(self, start: float, duration_s: float) -> np.ndarray | None:
        rate = CANONICAL_RATES[ChannelKind.ACC_X]
        first = int(np.floor((start - self.acc_start_time) * rate + 0.5))
        n = int(round(duration_s * rate))
        if first < 0 or first + n > self.acc.shape[1]:
            return None
        return self.acc[:, first : first + n]


def filter_channel(ch: ChannelRecording) -> FilteredChannel:
    plan = PREPROCESSING_PLAN[ch.kind]
    samples = ch.samples if plan.filter is None else apply_filter(plan.filter.design(ch.sample_rate), ch.samples)
    return FilteredChannel(ch.kind, TimedSignal(ch.start_time, ch.sample_rate, samples), plan.resample)


def preprocess_session(session: Session, target_rate_hz: float, source: str = "target") -> PreprocessedSession:
    """Filter every physiological channel of ``session`` over the whole recording."""
    if target_rate_hz <= 0:
        raise ValueError("target rate must be positive")
    acc_channels = [session.channels[kind] for kind in ACC_CHANNELS]
    return PreprocessedSession(
        subject_id=session.subject_id,
        week_index=session.week_index,
        target_rate_hz=target_rate_hz,
        physio={kind: filter_channel(session.channels[kind]) for kind in PHYSIO_CHANNELS},
        acc=np.vstack([ch.samples for ch in acc_channels]),
        acc_start_time=acc_channels[0].start_time,
        tags=session.tags.copy(),
        span=session.span,
        source=source,
        baseline_intervals=list(session.baseline_intervals),
    )


def preprocess_sessions(
    sessions: list[Session], target_rate_hz: float, source: str = "target"
) -> list[PreprocessedSession]:
    processed = [preprocess_session(session, target_rate_hz, source) for session in sessions]
    n_filtered = sum(PREPROCESSING_PLAN[kind].filter is not None for kind in PHYSIO_CHANNELS)
    logger.info("stage=filter sessions=%d channels_filtered=%d", len(processed), n_filtered * len(processed))
    return processed
