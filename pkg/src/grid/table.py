"""Results table: one row per (condition, mode), one column per lead time."""
from pathlib import Path

import numpy as np
import pandas as pd

from src.grid.state import CONDITION_ORDER, GridState
from src.trainflow.modes import MODE_ORDER
from src.windowing.config import LEAD_TIMES


def lead_column(lead_time_s: int) -> str:
    return f"{lead_time_s // 60} min"


def table_frame(state: GridState) -> pd.DataFrame:
    """F1 per cell; cells that are not done stay NaN."""
    values = np.full((len(CONDITION_ORDER) * len(MODE_ORDER), len(LEAD_TIMES)), np.nan)
    for cell in state.cells:
        if cell.status == "done":
            c, m, _ = cell.key
            values[c * len(MODE_ORDER) + m, LEAD_TIMES.index(cell.lead_time_s)] = cell.f1

    frame = pd.DataFrame(values, columns=[lead_column(lead) for lead in LEAD_TIMES])
    frame.insert(0, "mode", [mode.value for _ in CONDITION_ORDER for mode in MODE_ORDER])
    frame.insert(0, "condition", [condition.label for condition in CONDITION_ORDER for _ in MODE_ORDER])
    return frame


def export_table(state: GridState, path: Path | None = None) -> str:
    text = table_frame(state).to_csv(index=False, na_rep="", float_format="%.4f", lineterminator="\n")
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return text
