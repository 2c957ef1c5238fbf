"""
Windowing Module - labeled, standardized, balanced window datasets

Contains:
- config.py: WindowConfig and the enumerated window/lead/rate grids
- types.py: Example and DatasetSplit
- extract.py: event and non-event window extraction
- balance.py: per-window standardization and 1/3 event undersampling
- split.py: random 80/10/10 and two-stage personalized splits
- dump.py: CSV dataset dump
"""

from .balance import Undersampled, standardize, standardize_all, undersample, undersample_with_pool
from .config import LEAD_TIMES, TARGET_RATES, WINDOW_LENGTHS, WindowConfig
from .dump import read_dataset, write_dataset
from .extract import (
    SessionWindows,
    extract_event_windows,
    extract_nonevent_windows,
    extract_session_windows,
    extract_windows,
)
from .split import BalanceHook, round_half_up, split_holdout, split_personalized, split_random
from .types import EVENT, NONEVENT, DatasetSplit, Example, SplitDescriptor, event_fraction, labels_of, stack_signals

__all__ = [
    "EVENT",
    "NONEVENT",
    "LEAD_TIMES",
    "TARGET_RATES",
    "WINDOW_LENGTHS",
    "BalanceHook",
    "DatasetSplit",
    "Example",
    "SessionWindows",
    "SplitDescriptor",
    "Undersampled",
    "WindowConfig",
    "event_fraction",
    "extract_event_windows",
    "extract_nonevent_windows",
    "extract_session_windows",
    "extract_windows",
    "labels_of",
    "read_dataset",
    "round_half_up",
    "split_holdout",
    "split_personalized",
    "split_random",
    "stack_signals",
    "standardize",
    "standardize_all",
    "undersample",
    "undersample_with_pool",
    "write_dataset",
]
