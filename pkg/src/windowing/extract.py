"""Event and non-event window extraction on preprocessed sessions.

An event window for tag ``t`` spans ``[t - lead - W, t - lead)``. Non-event
windows tile the recording from its start and must stay clear of every
exclusion zone ``[t - lead - W, t + buffer]``.
"""
import logging
from typing import NamedTuple

import numpy as np

from src.dsp.pipeline import PreprocessedSession
from src.windowing.config import WindowConfig
from src.windowing.types import EVENT, NONEVENT, Example

logger = logging.getLogger(__name__)


class EventExtraction(NamedTuple):
    examples: list[Example]
    skipped: int


class SessionWindows(NamedTuple):
    events: list[Example]
    nonevents: list[Example]
    skipped: int


def _overlaps(start: float, end: float, zone_start: float, zone_end: float) -> bool:
    return start < zone_end and end > zone_start


def _cut(
    session: PreprocessedSession, cfg: WindowConfig, start: float, label: int
) -> Example | None:
    signal = session.physio_window(start, cfg.window_len_s)
    if signal is None or signal.shape[1] != cfg.n_samples:
        return None
    acc = session.acc_slice(start, cfg.window_len_s)
    if acc is None:
        return None
    return Example(
        signal=signal,
        label=label,
        subject_id=session.subject_id,
        week_index=session.week_index,
        window_start=start,
        acc_window=acc.copy(),
        lead_time_s=float(cfg.lead_time_s),
        source=session.source,
    )


def extract_event_windows(session: PreprocessedSession, cfg: WindowConfig) -> EventExtraction:
    """One window per usable tag; skipped tags are counted, never padded."""
    if session.target_rate_hz != cfg.target_rate_hz:
        raise ValueError(
            f"session prepared for {session.target_rate_hz:g} Hz windows, window config expects {cfg.target_rate_hz} Hz"
        )
    span_start, span_end = session.span
    examples: list[Example] = []
    skipped = 0
    accepted: list[tuple[float, float]] = []

    for index, tag in enumerate(session.tags):
        end = tag - cfg.lead_time_s
        start = end - cfg.window_len_s
        earlier = session.tags[:index]
        blocked = (
            start < span_start
            or end > span_end
            or any(_overlaps(start, end, t, t + cfg.post_tag_buffer_s) for t in earlier)
            or any(_overlaps(start, end, a, b) for a, b in accepted)
        )
        example = None if blocked else _cut(session, cfg, start, EVENT)
        if example is None:
            skipped += 1
            continue
        accepted.append((start, end))
        examples.append(example)

    return EventExtraction(examples, skipped)


def exclusion_zones(session: PreprocessedSession, cfg: WindowConfig) -> list[tuple[float, float]]:
    return [
        (tag - cfg.lead_time_s - cfg.window_len_s, tag + cfg.post_tag_buffer_s)
        for tag in session.tags
    ]


def extract_nonevent_windows(session: PreprocessedSession, cfg: WindowConfig) -> list[Example]:
    span_start, span_end = session.span
    zones = exclusion_zones(session, cfg)
    n_tiles = int(np.floor((span_end - span_start) / cfg.window_len_s + 1e-9))
    examples: list[Example] = []
    for k in range(n_tiles):
        start = span_start + k * cfg.window_len_s
        end = start + cfg.window_len_s
        if any(_overlaps(start, end, a, b) for a, b in zones):
            continue
        example = _cut(session, cfg, start, NONEVENT)
        if example is not None:
            examples.append(example)
    return examples


def extract_session_windows(session: PreprocessedSession, cfg: WindowConfig) -> SessionWindows:
    events = extract_event_windows(session, cfg)
    return SessionWindows(events.examples, extract_nonevent_windows(session, cfg), events.skipped)


def extract_windows(sessions: list[PreprocessedSession], cfg: WindowConfig) -> SessionWindows:
    """Windows of every session, concatenated in session order."""
    events: list[Example] = []
    nonevents: list[Example] = []
    skipped = 0
    for session in sessions:
        windows = extract_session_windows(session, cfg)
        events.extend(windows.events)
        nonevents.extend(windows.nonevents)
        skipped += windows.skipped
    logger.info(
        "stage=resample windows=%d target_rate_hz=%d per_window=true",
        len(events) + len(nonevents),
        cfg.target_rate_hz,
    )
    logger.info(
        "stage=window window_len_s=%d lead_time_s=%d events=%d nonevents=%d skipped_tags=%d",
        cfg.window_len_s,
        cfg.lead_time_s,
        len(events),
        len(nonevents),
        skipped,
    )
    return SessionWindows(events, nonevents, skipped)
