"""Numeric CSV dump of a dataset.

Column order: subject_id, week_index, window_start, label, lead_time_s,
activity (1/0, blank when unclassified), then BVP_0..BVP_{L-1}, EDA_0..,
HR_0.., TEMP_0... Accelerometer slices are not written.
"""
from pathlib import Path

import numpy as np
import pandas as pd

from src.core.exceptions import DataFormatError
from src.e4.types import PHYSIO_CHANNELS
from src.windowing.types import Example

META_COLUMNS = ["subject_id", "week_index", "window_start", "label", "lead_time_s", "activity"]


def _signal_columns(length: int) -> list[str]:
    return [f"{kind.value}_{i}" for kind in PHYSIO_CHANNELS for i in range(length)]


def write_dataset(examples: list[Example], path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    length = examples[0].signal.shape[1] if examples else 0
    meta = pd.DataFrame(
        {
            "subject_id": [ex.subject_id for ex in examples],
            "week_index": [ex.week_index for ex in examples],
            "window_start": [ex.window_start for ex in examples],
            "label": [ex.label for ex in examples],
            "lead_time_s": [ex.lead_time_s for ex in examples],
            "activity": pd.array(
                [None if ex.activity is None else int(ex.activity) for ex in examples], dtype="Int64"
            ),
        },
        columns=META_COLUMNS,
    )
    flat = np.array([ex.signal.reshape(-1) for ex in examples]).reshape(len(examples), 4 * length)
    signals = pd.DataFrame(flat, columns=_signal_columns(length))
    pd.concat([meta, signals], axis=1).to_csv(path, index=False, float_format="%.17g")
    return path


def read_dataset(path: Path | str, source: str = "target") -> list[Example]:
    path = Path(path)
    frame = pd.read_csv(path, dtype={"subject_id": str})
    missing = [c for c in META_COLUMNS if c not in frame.columns]
    if missing:
        raise DataFormatError(path, f"missing columns {', '.join(missing)}", line=1)
    signal_columns = [c for c in frame.columns if c not in META_COLUMNS]
    if len(signal_columns) % len(PHYSIO_CHANNELS):
        raise DataFormatError(path, f"{len(signal_columns)} signal columns is not a multiple of 4", line=1)
    length = len(signal_columns) // len(PHYSIO_CHANNELS)
    if signal_columns != _signal_columns(length):
        raise DataFormatError(path, "signal columns out of order", line=1)

    values = frame[signal_columns].to_numpy(dtype=np.float64)
    examples = []
    for row, flat in zip(frame.itertuples(index=False), values):
        activity = None if pd.isna(row.activity) else bool(int(row.activity))
        examples.append(
            Example(
                signal=flat.reshape(len(PHYSIO_CHANNELS), length),
                label=int(row.label),
                subject_id=str(row.subject_id),
                week_index=int(row.week_index),
                window_start=float(row.window_start),
                lead_time_s=float(row.lead_time_s),
                activity=activity,
                source=source,
            )
        )
    return examples
