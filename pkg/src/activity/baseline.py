from typing import Literal, NamedTuple

import numpy as np

from src.activity.features import ACC_RATE_HZ
from src.e4.types import ACC_CHANNELS, Session


class BaselineWindow(NamedTuple):
    acc_window: np.ndarray
    label: Literal["dance", "relax"]


def baseline_windows(session: Session, window_len_s: float) -> list[BaselineWindow]:
    """Tile every dance/relax interval; an interval shorter than a window gives one window."""
    first = session.channels[ACC_CHANNELS[0]]
    acc = np.vstack([session.channels[kind].samples for kind in ACC_CHANNELS])
    per_window = int(round(window_len_s * ACC_RATE_HZ))
    windows: list[BaselineWindow] = []
    for interval in session.baseline_intervals:
        lo = max(0, int(np.floor((interval.start - first.start_time) * ACC_RATE_HZ + 0.5)))
        hi = min(acc.shape[1], int(np.floor((interval.end - first.start_time) * ACC_RATE_HZ + 0.5)))
        if hi - lo < 4:
            continue
        if hi - lo < per_window:
            windows.append(BaselineWindow(acc[:, lo:hi].copy(), interval.label))
            continue
        for start in range(lo, hi - per_window + 1, per_window):
            windows.append(BaselineWindow(acc[:, start : start + per_window].copy(), interval.label))
    return windows


def cohort_baseline_windows(sessions: list[Session], window_len_s: float) -> list[BaselineWindow]:
    return [w for session in sessions for w in baseline_windows(session, window_len_s)]
