"""
Trainflow Module - Pretraining and the five application modes

Contains:
- modes.py: ApplicationMode and the table row order
- config.py: PretrainConfig and RunConfig
- corpora.py: PretrainCorpus and the four synthetic stand-in corpora
- pretrain.py: Autoencoder + classifier pretraining, leave-one-corpus-out folds
- run.py: run_mode and RunResult
"""
from .config import PretrainConfig, RunConfig
from .corpora import STANDIN_PROFILES, PretrainCorpus, build_standin_corpora
from .modes import MODE_ORDER, ApplicationMode
from .pretrain import FoldReport, PretrainResult, params_filename, pretrain
from .run import FoldEvaluation, RunCondition, RunResult, run_mode, target_examples

__all__ = [
    "MODE_ORDER",
    "STANDIN_PROFILES",
    "ApplicationMode",
    "FoldEvaluation",
    "FoldReport",
    "PretrainConfig",
    "PretrainCorpus",
    "PretrainResult",
    "RunCondition",
    "RunConfig",
    "RunResult",
    "build_standin_corpora",
    "params_filename",
    "pretrain",
    "run_mode",
    "target_examples",
]
