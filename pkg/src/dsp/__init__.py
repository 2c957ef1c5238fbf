"""
DSP Module - Filtering and Rate Conversion

Contains:
- filters.py: Butterworth lowpass/bandpass design as biquad cascades, causal application
- resample.py: Fourier and linear-interpolation resampling
- pipeline.py: The per-channel preprocessing plan and PreprocessedSession
"""
from .filters import (
    FilterSpec,
    apply_filter,
    design_butterworth_bandpass,
    design_butterworth_lowpass,
    magnitude_response,
)
from .resample import resample_fourier, resample_linear
from .pipeline import PREPROCESSING_PLAN, FilteredChannel, PreprocessedSession, preprocess_session, preprocess_sessions

__all__ = [
    "FilterSpec",
    "apply_filter",
    "design_butterworth_bandpass",
    "design_butterworth_lowpass",
    "magnitude_response",
    "resample_fourier",
    "resample_linear",
    "PREPROCESSING_PLAN",
    "FilteredChannel",
    "PreprocessedSession",
    "preprocess_session",
    "preprocess_sessions",
]
