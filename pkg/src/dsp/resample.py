import math

import numpy as np
from scipy import signal


def output_length(n_in: int, rate_in_hz: float, rate_out_hz: float) -> int:
    """round(n_in * rate_out / rate_in), halves rounded up."""
    return int(math.floor(n_in * rate_out_hz / rate_in_hz + 0.5))


def _check_rates(rate_in_hz: float, rate_out_hz: float) -> None:
    if rate_in_hz <= 0 or rate_out_hz <= 0:
        raise ValueError("sample rates must be positive")


def resample_fourier(samples: np.ndarray, rate_in_hz: float, rate_out_hz: float) -> np.ndarray:
    """Spectrum truncation/zero-padding (Nyquist bin split on even lengths), real part only."""
    x = np.asarray(samples, dtype=np.float64)
    if len(x) == 0:
        raise ValueError("cannot resample an empty signal")
    _check_rates(rate_in_hz, rate_out_hz)
    n_out = output_length(len(x), rate_in_hz, rate_out_hz)
    if n_out < 1:
        raise ValueError(f"output length {n_out} < 1")
    if n_out == len(x):
        return x.copy()
    return np.real(signal.resample(x, n_out))


def resample_linear(samples: np.ndarray, rate_in_hz: float, rate_out_hz: float) -> np.ndarray:
    """Linear interpolation on the input grid; queries past the last sample hold its value."""
    x = np.asarray(samples, dtype=np.float64)
    if len(x) < 2:
        raise ValueError("linear resampling needs at least 2 samples")
    _check_rates(rate_in_hz, rate_out_hz)
    n_out = output_length(len(x), rate_in_hz, rate_out_hz)
    t_in = np.arange(len(x)) / rate_in_hz
    t_out = np.arange(n_out) / rate_out_hz
    return np.interp(t_out, t_in, x)
