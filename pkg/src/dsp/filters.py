from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import signal

from src.core.exceptions import FilterDesignError

FilterKind = Literal["lowpass", "bandpass"]


@dataclass(frozen=True)
class FilterSpec:
    """Digital Butterworth filter stored as second-order sections.

    ``sections`` rows follow the scipy SOS layout ``[b0, b1, b2, 1, a1, a2]``.
    """
    kind: FilterKind
    order: int
    cutoff_high: float
    sample_rate: float
    sections: np.ndarray
    cutoff_low: float | None = None

    def __post_init__(self) -> None:
        sections = np.array(self.sections, dtype=np.float64)
        sections.setflags(write=False)
        object.__setattr__(self, "sections", sections)
        if np.any(np.abs(self.poles()) >= 1.0):
            raise FilterDesignError("unstable section: pole on or outside the unit circle")

    @property
    def biquads(self) -> list[tuple[float, float, float, float, float]]:
        """(b0, b1, b2, a1, a2) per section."""
        return [(b0, b1, b2, a1, a2) for b0, b1, b2, _, a1, a2 in self.sections.tolist()]

    @property
    def nyquist(self) -> float:
        return self.sample_rate / 2.0

    def poles(self) -> np.ndarray:
        _, poles, _ = signal.sos2zpk(self.sections)
        return poles


def design_butterworth_lowpass(order: int, cutoff_hz: float, sample_rate_hz: float) -> FilterSpec:
    """Bilinear-transform Butterworth lowpass with prewarping at the cutoff."""
    if order < 1:
        raise FilterDesignError(f"order must be >= 1, got {order}")
    if not 0 < cutoff_hz < sample_rate_hz / 2:
        raise FilterDesignError(f"cutoff {cutoff_hz} Hz must lie in (0, Nyquist={sample_rate_hz / 2} Hz)")
    sos = signal.butter(order, cutoff_hz, btype="lowpass", output="sos", fs=sample_rate_hz)
    return FilterSpec("lowpass", order, cutoff_hz, sample_rate_hz, sos)


def design_butterworth_bandpass(
    order_per_edge: int, low_hz: float, high_hz: float, sample_rate_hz: float
) -> FilterSpec:
    """Bandpass from an ``order_per_edge`` prototype (2 * order_per_edge poles in total)."""
    if order_per_edge < 1:
        raise FilterDesignError(f"order must be >= 1, got {order_per_edge}")
    if not 0 < low_hz < high_hz:
        raise FilterDesignError(f"band edges must satisfy 0 < low < high, got {low_hz}, {high_hz}")
    if high_hz >= sample_rate_hz / 2:
        raise FilterDesignError(f"high edge {high_hz} Hz must be below Nyquist={sample_rate_hz / 2} Hz")
    sos = signal.butter(order_per_edge, [low_hz, high_hz], btype="bandpass", output="sos", fs=sample_rate_hz)
    return FilterSpec("bandpass", order_per_edge, high_hz, sample_rate_hz, sos, cutoff_low=low_hz)


def apply_filter(spec: FilterSpec, samples: np.ndarray) -> np.ndarray:
    """Causal single pass from a zero initial state; output length equals input length."""
    x = np.asarray(samples, dtype=np.float64)
    if x.ndim != 1 or len(x) < 1:
        raise ValueError("samples must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(x)):
        raise ValueError("samples contain non-finite values")
    # scipy's sosfilt rejects read-only buffers; hand it a writable copy of the frozen sections
    return signal.sosfilt(np.array(spec.sections), x)


def magnitude_response(spec: FilterSpec, freq_hz: float | np.ndarray) -> float | np.ndarray:
    """|H(e^{i 2 pi f / fs})| as the product of the section magnitudes."""
    freqs = np.atleast_1d(np.asarray(freq_hz, dtype=np.float64))
    if np.any(freqs < 0) or np.any(freqs > spec.nyquist):
        raise ValueError(f"frequency outside [0, {spec.nyquist}] Hz")
    _, response = signal.sosfreqz(spec.sections, worN=freqs, fs=spec.sample_rate)
    gain = np.abs(response)
    return float(gain[0]) if np.ndim(freq_hz) == 0 else gain
