"""
Activity Module - Physical-activity gate from accelerometer data

Contains:
- features.py: Magnitude in g, standard deviation and dominant frequency features
- baseline.py: Dance/relax baseline windows from the in-clinic session
- model.py: ActivityModel, threshold tuning, classification, JSON persistence
- gate.py: Dataset gating with the 25% re-sample rule, activity/prediction comparison
"""
from .baseline import BaselineWindow, baseline_windows, cohort_baseline_windows
from .features import ActivityMethod, acc_magnitude, feature_dominant_freq, feature_std
from .gate import (
    ActivityComparison,
    GateReport,
    annotate,
    compare_with_predictions,
    empty_comparison,
    gate_dataset,
)
from .model import ActivityModel, baseline_score, classify, load_model, save_model, tune

__all__ = [
    "ActivityComparison",
    "ActivityMethod",
    "ActivityModel",
    "BaselineWindow",
    "GateReport",
    "acc_magnitude",
    "annotate",
    "baseline_score",
    "baseline_windows",
    "classify",
    "cohort_baseline_windows",
    "compare_with_predictions",
    "empty_comparison",
    "feature_dominant_freq",
    "feature_std",
    "gate_dataset",
    "load_model",
    "save_model",
    "tune",
]
