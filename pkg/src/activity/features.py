"""Accelerometer features for the activity gate.

Raw E4 accelerometer values are 1/64 g; magnitudes are returned in g.
"""
from enum import Enum
from typing import Callable

import numpy as np

from src.core.exceptions import ShapeError
from src.e4.types import ACC_UNITS_PER_G, CANONICAL_RATES, ChannelKind

ACC_RATE_HZ = CANONICAL_RATES[ChannelKind.ACC_X]


class ActivityMethod(str, Enum):
    STD_DEV = "StdDev"
    DOMINANT_FREQ = "DominantFreq"


def acc_magnitude(acc_window) -> np.ndarray:
    try:
        acc = np.asarray(acc_window, dtype=np.float64)
    except ValueError as exc:
        raise ShapeError(f"ragged accelerometer window: {exc}") from exc
    if acc.ndim != 2 or acc.shape[0] != 3:
        raise ShapeError(f"accelerometer window must be 3 x N, got shape {acc.shape}")
    return np.sqrt(np.sum(acc**2, axis=0)) / ACC_UNITS_PER_G


def feature_std(magnitude: np.ndarray) -> float:
    magnitude = np.asarray(magnitude, dtype=np.float64)
    if magnitude.size < 2:
        raise ValueError(f"standard deviation needs >= 2 samples, got {magnitude.size}")
    return float(np.std(magnitude))


def feature_dominant_freq(magnitude: np.ndarray, rate_hz: float = ACC_RATE_HZ) -> float:
    """Frequency of the strongest non-DC bin; 0 Hz when the spectrum is flat zero."""
    magnitude = np.asarray(magnitude, dtype=np.float64)
    if magnitude.size < 4:
        raise ValueError(f"dominant frequency needs >= 4 samples, got {magnitude.size}")
    centered = magnitude - magnitude.mean()
    spectrum = np.abs(np.fft.rfft(centered))
    freqs = np.fft.rfftfreq(centered.size, d=1.0 / rate_hz)
    if not np.any(spectrum[1:] > 1e-9 * centered.size):
        return 0.0
    return float(freqs[1 + np.argmax(spectrum[1:])])


FEATURES: dict[ActivityMethod, Callable[[np.ndarray], float]] = {
    ActivityMethod.STD_DEV: feature_std,
    ActivityMethod.DOMINANT_FREQ: feature_dominant_freq,
}


def window_feature(acc_window: np.ndarray, method: ActivityMethod) -> float:
    return FEATURES[method](acc_magnitude(acc_window))
