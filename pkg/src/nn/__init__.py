"""
NN Module - 1D convolutional autoencoder and event classifier in numpy

Contains:
- layers.py: Conv1d, Dense, ReLU, Upsample, pooling, sigmoid, losses (hand-written backward)
- model.py: Architecture, ModelParams, classifier/autoencoder forward and backward
- optim.py: Adam over named parameter arrays
- train.py: TrainConfig, autoencoder_step, train_classifier, predict
- storage.py: Versioned parameter files with an architecture fingerprint
- factory.py: ParamsFactory (random init, file, pretrained copy)
"""
from .factory import ParamsFactory
from .layers import conv1d_backward, conv1d_forward
from .model import Architecture, ModelParams, autoencoder_forward, classifier_forward
from .optim import Adam
from .storage import load_params, save_params
from .train import (
    EpochRecord,
    TrainConfig,
    TrainResult,
    autoencoder_step,
    predict,
    train_autoencoder,
    train_classifier,
)

__all__ = [
    "Adam",
    "Architecture",
    "EpochRecord",
    "ModelParams",
    "ParamsFactory",
    "TrainConfig",
    "TrainResult",
    "autoencoder_forward",
    "autoencoder_step",
    "classifier_forward",
    "conv1d_backward",
    "conv1d_forward",
    "load_params",
    "predict",
    "save_params",
    "train_autoencoder",
    "train_classifier",
]
