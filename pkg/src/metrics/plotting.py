"""ROC export: two-column CSV and SVG curves."""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

from src.metrics.roc import RocPoints


def export_roc_csv(points: RocPoints, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(points, columns=["fpr", "tpr"]).to_csv(path, index=False, float_format="%.10g")
    return path


def plot_roc_svg(curves: dict[str, RocPoints], path: Path | str, title: str = "ROC") -> Path:
    """One line per labelled curve plus the chance diagonal."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context({"svg.hashsalt": "wristcast", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(5, 5))
        ax.plot([0, 1], [0, 1], linestyle="--", color="grey", linewidth=0.8)
        for label, points in sorted(curves.items()):
            if points:
                fpr, tpr = zip(*points)
                ax.plot(fpr, tpr, label=label)
        ax.set_xlabel("False positive rate")
        ax.set_ylabel("True positive rate")
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1)
        ax.set_title(title)
        if any(curves.values()):
            ax.legend(loc="lower right", fontsize="small")
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return path
