"""Seeded synthetic E4 sessions.

Stand-in for clinical recordings: physiological channels carry an additive
response that ramps up linearly before every planted tag, the accelerometer
carries rhythmic motion inside activity segments (and the dance part of the
in-clinic baseline).
"""
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.core.seeds import substream
from src.e4.types import (
    ACC_CHANNELS,
    ACC_UNITS_PER_G,
    CANONICAL_RATES,
    BaselineInterval,
    ChannelKind,
    ChannelRecording,
    Session,
)

MAX_WINDOW_S = 300.0
MAX_LEAD_S = 300.0
POST_TAG_BUFFER_S = 300.0
MIN_SESSION_S = 2 * (MAX_WINDOW_S + POST_TAG_BUFFER_S + MAX_LEAD_S)

RELAX_INTERVAL = (0.0, 300.0)
DANCE_INTERVAL = (300.0, 600.0)
WEEK_S = 7 * 86_400.0
# Planted tags are whole seconds; this keeps them strictly increasing after rounding.
MIN_TAG_SPACING_S = 2.0


class EventEffect(BaseModel):
    """Peak per-channel response at the tag."""
    eda: float = 1.0          # µS rise
    hr: float = 15.0          # bpm rise
    temp: float = 0.5         # °C drop
    bvp: float = 0.5          # relative amplitude change
    response_s: float = Field(default=300.0, gt=0)


class SyntheticConfig(BaseModel):
    seed: int = 0
    n_subjects: int = Field(default=9, ge=1)
    weeks_per_subject: int = Field(default=8, ge=1)
    session_duration_s: float = 3600.0
    events_per_session: int = Field(default=3, ge=1)
    event_effect: EventEffect = Field(default_factory=EventEffect)
    activity_segments: list[tuple[float, float]] = Field(default_factory=lambda: [(1200.0, 1500.0)])
    activity_amplitude: float = Field(default=24.0, ge=0)   # raw ACC units (1/64 g)
    noise_scale: float = Field(default=1.0, ge=0)
    start_time: float = 1_600_000_000.0
    include_baseline: bool = True

    @model_validator(mode="after")
    def check_duration(self) -> Self:
        if self.session_duration_s < MIN_SESSION_S:
            raise ValueError(
                f"session_duration_s must be >= {MIN_SESSION_S:g} s "
                "(2 x (max window + post-tag buffer + max lead))"
            )
        for start, end in self.activity_segments:
            if not 0 <= start < end <= self.session_duration_s:
                raise ValueError(f"activity segment ({start}, {end}) outside the session")
        low, high = _tag_range(self.session_duration_s)
        if (high - low) / self.events_per_session < MIN_TAG_SPACING_S:
            raise ValueError(
                f"events_per_session={self.events_per_session} leaves less than {MIN_TAG_SPACING_S:g} s between tags"
            )
        return self

    def subject_ids(self) -> list[str]:
        return [f"S{index + 1:02d}" for index in range(self.n_subjects)]


def _tag_range(duration_s: float) -> tuple[float, float]:
    return MAX_WINDOW_S + MAX_LEAD_S, duration_s - POST_TAG_BUFFER_S


def _tag_offsets(cfg: SyntheticConfig, rng: np.random.Generator) -> np.ndarray:
    """One tag per equal-width slot, jittered inside the middle fifth of the slot."""
    low, high = _tag_range(cfg.session_duration_s)
    width = (high - low) / cfg.events_per_session
    jitter = rng.uniform(0.4, 0.6, size=cfg.events_per_session)
    return np.round(low + (np.arange(cfg.events_per_session) + jitter) * width)


def _response(t: np.ndarray, tags: np.ndarray, response_s: float) -> np.ndarray:
    """Triangular bump per tag: linear rise before it, linear decay after it."""
    if len(tags) == 0:
        return np.zeros_like(t)
    distance = np.abs(t[None, :] - tags[:, None]) / response_s
    return np.clip(1.0 - distance, 0.0, None).max(axis=0)


def _in_segments(t: np.ndarray, segments: list[tuple[float, float]]) -> np.ndarray:
    mask = np.zeros(len(t), dtype=bool)
    for start, end in segments:
        mask |= (t >= start) & (t < end)
    return mask


def generate_session(cfg: SyntheticConfig, subject_id: str, week_index: int) -> Session:
    """Pure function of (cfg, subject_id, week_index)."""
    subject_rng = substream(cfg.seed, "subject", subject_id)
    eda_base = subject_rng.uniform(1.0, 5.0)
    hr_base = subject_rng.uniform(65.0, 85.0)
    temp_base = subject_rng.uniform(32.0, 34.0)
    bvp_amp = subject_rng.uniform(40.0, 80.0)

    rng = substream(cfg.seed, "generator", subject_id, week_index)
    offsets = _tag_offsets(cfg, rng)
    start_time = cfg.start_time + (week_index - 1) * WEEK_S
    effect = cfg.event_effect
    noise = cfg.noise_scale

    def grid(kind: ChannelKind) -> np.ndarray:
        rate = CANONICAL_RATES[kind]
        return np.arange(int(round(cfg.session_duration_s * rate))) / rate

    channels: dict[ChannelKind, ChannelRecording] = {}

    t = grid(ChannelKind.BVP)
    resp = _response(t, offsets, effect.response_s)
    f_heart = hr_base / 60.0
    phase = 2 * np.pi * f_heart * t
    pulse = np.sin(phase) + 0.5 * np.sin(2 * phase + 0.3) + 0.25 * np.sin(3 * phase + 0.6)
    bvp = bvp_amp * (1.0 + effect.bvp * resp) * pulse + noise * 0.1 * bvp_amp * rng.standard_normal(len(t))
    channels[ChannelKind.BVP] = ChannelRecording(ChannelKind.BVP, start_time, CANONICAL_RATES[ChannelKind.BVP], bvp)

    t = grid(ChannelKind.EDA)
    drift = 0.02 * eda_base * np.sin(2 * np.pi * t / 3600.0 + rng.uniform(0, 2 * np.pi))
    eda = eda_base + drift + effect.eda * _response(t, offsets, effect.response_s) + noise * 0.1 * rng.standard_normal(len(t))
    channels[ChannelKind.EDA] = ChannelRecording(ChannelKind.EDA, start_time, CANONICAL_RATES[ChannelKind.EDA], eda)

    temp = temp_base - effect.temp * _response(t, offsets, effect.response_s) + noise * 0.05 * rng.standard_normal(len(t))
    channels[ChannelKind.TEMP] = ChannelRecording(ChannelKind.TEMP, start_time, CANONICAL_RATES[ChannelKind.TEMP], temp)

    t = grid(ChannelKind.HR)
    hr = hr_base + effect.hr * _response(t, offsets, effect.response_s) + noise * 2.0 * rng.standard_normal(len(t))
    channels[ChannelKind.HR] = ChannelRecording(ChannelKind.HR, start_time, CANONICAL_RATES[ChannelKind.HR], hr)

    baseline: list[BaselineInterval] = []
    motion_segments = list(cfg.activity_segments)
    if cfg.include_baseline and week_index == 1:
        baseline = [
            BaselineInterval(start_time + RELAX_INTERVAL[0], start_time + RELAX_INTERVAL[1], "relax"),
            BaselineInterval(start_time + DANCE_INTERVAL[0], start_time + DANCE_INTERVAL[1], "dance"),
        ]
        motion_segments.append(DANCE_INTERVAL)

    t = grid(ChannelKind.ACC_X)
    active = _in_segments(t, motion_segments)
    f_motion = rng.uniform(1.5, 2.5)
    resting = np.array([0.0, 0.0, ACC_UNITS_PER_G])
    for axis, kind in enumerate(ACC_CHANNELS):
        motion = cfg.activity_amplitude * (
            np.sin(2 * np.pi * f_motion * t + axis * 2 * np.pi / 3)
            + 0.3 * rng.standard_normal(len(t))
        )
        acc = resting[axis] + noise * rng.standard_normal(len(t)) + np.where(active, motion, 0.0)
        channels[kind] = ChannelRecording(kind, start_time, CANONICAL_RATES[kind], np.round(acc))

    return Session(
        subject_id=subject_id,
        week_index=week_index,
        channels=channels,
        tags=start_time + offsets,
        baseline_intervals=baseline,
    )


def generate_cohort(cfg: SyntheticConfig) -> list[Session]:
    """Every subject-week of ``cfg`` in (subject, week) order."""
    return [
        generate_session(cfg, subject_id, week)
        for subject_id in cfg.subject_ids()
        for week in range(1, cfg.weeks_per_subject + 1)
    ]
