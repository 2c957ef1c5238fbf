"""
Metrics Module - Confusion counts, accuracy/F1, ROC/AUC, seed aggregation

Contains:
- classification.py: ConfusionCounts, confusion, accuracy, f1, precision, recall
- roc.py: ROC points and trapezoidal AUC
- aggregate.py: Mean and population std over seeds
- report.py: MetricsReport
- plotting.py: ROC CSV export and SVG rendering
"""
from .aggregate import aggregate
from .classification import ConfusionCounts, accuracy, confusion, f1, precision, recall
from .plotting import export_roc_csv, plot_roc_svg
from .report import MetricsReport, build_report
from .roc import RocPoints, auc, roc, roc_auc

__all__ = [
    "ConfusionCounts",
    "MetricsReport",
    "RocPoints",
    "accuracy",
    "aggregate",
    "auc",
    "build_report",
    "confusion",
    "export_roc_csv",
    "f1",
    "plot_roc_svg",
    "precision",
    "recall",
    "roc",
    "roc_auc",
]
