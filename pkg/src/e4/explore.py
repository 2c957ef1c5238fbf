from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from src.e4.types import ACC_CHANNELS, ACC_UNITS_PER_G, PHYSIO_CHANNELS, Session


def summarize_sessions(sessions: list[Session]) -> pd.DataFrame:
    """Descriptive statistics per (subject, week, channel) plus tag and baseline counts."""
    rows = []
    for session in sessions:
        for kind, ch in session.channels.items():
            samples = ch.samples
            rows.append(
                {
                    "subject_id": session.subject_id,
                    "week_index": session.week_index,
                    "channel": kind.value,
                    "n_samples": len(samples),
                    "duration_s": len(samples) / ch.sample_rate,
                    "mean": float(np.mean(samples)) if len(samples) else np.nan,
                    "std": float(np.std(samples)) if len(samples) else np.nan,
                    "min": float(np.min(samples)) if len(samples) else np.nan,
                    "max": float(np.max(samples)) if len(samples) else np.nan,
                    "n_tags": len(session.tags),
                    "n_dance": sum(b.label == "dance" for b in session.baseline_intervals),
                    "n_relax": sum(b.label == "relax" for b in session.baseline_intervals),
                }
            )
    return pd.DataFrame(rows)


def plot_histograms(sessions: list[Session], path: Path | str, bins: int = 50) -> Path:
    """One histogram panel per physiological channel plus accelerometer magnitude."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    plt.rcParams["svg.hashsalt"] = "wristcast"

    fig, axes = plt.subplots(1, len(PHYSIO_CHANNELS) + 1, figsize=(4 * (len(PHYSIO_CHANNELS) + 1), 3))
    for ax, kind in zip(axes, PHYSIO_CHANNELS):
        values = np.concatenate([s.channels[kind].samples for s in sessions])
        ax.hist(values, bins=bins, color="tab:blue")
        ax.set_title(kind.value)

    magnitude = np.concatenate(
        [
            np.sqrt(sum(s.channels[kind].samples ** 2 for kind in ACC_CHANNELS)) / ACC_UNITS_PER_G
            for s in sessions
        ]
    )
    axes[-1].hist(magnitude, bins=bins, color="tab:orange")
    axes[-1].set_title("ACC magnitude (g)")

    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
