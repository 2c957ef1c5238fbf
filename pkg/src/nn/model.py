"""The 1D convolutional autoencoder and the classifier built on its encoder.

Encoder: three stride-2 convolutions with ReLU (4 -> 16 -> 32 -> 64).
Decoder: nearest-neighbour upsampling, each followed by a same-padded
convolution, back to 4 channels; the last convolution is linear.
Head: convolution 64 -> 32 with ReLU, global average pooling, affine 32 -> 1,
sigmoid.
"""
import hashlib
import json

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.core.exceptions import ShapeError
from src.nn.layers import Conv1d, Dense, GlobalAvgPool, Layer, ReLU, Sigmoid, Upsample, conv_output_length


class Architecture(BaseModel):
    model_config = ConfigDict(frozen=True)

    in_channels: int = 4
    channels: tuple[int, int, int] = (16, 32, 64)
    kernels: tuple[int, int, int] = (7, 5, 3)
    strides: tuple[int, int, int] = (2, 2, 2)
    head_channels: int = 32
    head_kernel: int = 3
    min_length: int = 32

    @model_validator(mode="after")
    def check_chain(self) -> "Architecture":
        length = self.min_length
        for kernel, stride in zip(self.kernels, self.strides):
            if length < kernel:
                raise ValueError(f"min_length {self.min_length} too short for the encoder chain")
            length = conv_output_length(length, stride)
        if length < self.head_kernel:
            raise ValueError(f"min_length {self.min_length} too short for the head kernel")
        return self

    def fingerprint(self) -> str:
        payload = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class Encoder:
    def __init__(self, arch: Architecture) -> None:
        widths = (arch.in_channels,) + arch.channels
        self.convs = [
            Conv1d(widths[i], widths[i + 1], arch.kernels[i], arch.strides[i]) for i in range(len(arch.channels))
        ]
        self.relus = [ReLU() for _ in self.convs]
        self.lengths: list[int] = []

    @property
    def layers(self) -> list[Layer]:
        return list(self.convs)

    def forward(self, x: np.ndarray) -> np.ndarray:
        self.lengths = []
        for conv, relu in zip(self.convs, self.relus):
            self.lengths.append(x.shape[-1])
            x = relu.forward(conv.forward(x))
        return x

    def backward(self, grad: np.ndarray) -> np.ndarray:
        for conv, relu in zip(reversed(self.convs), reversed(self.relus)):
            grad = conv.backward(relu.backward(grad))
        return grad


class Decoder:
    def __init__(self, arch: Architecture) -> None:
        widths = (arch.in_channels,) + arch.channels
        n = len(arch.channels)
        self.ups = [Upsample(stride) for stride in reversed(arch.strides)]
        self.convs = [Conv1d(widths[i + 1], widths[i], arch.kernels[i], 1) for i in reversed(range(n))]
        self.relus = [ReLU() for _ in range(n - 1)]

    @property
    def layers(self) -> list[Layer]:
        return list(self.convs)

    def forward(self, z: np.ndarray, lengths: list[int]) -> np.ndarray:
        x = z
        for i, (up, conv, length) in enumerate(zip(self.ups, self.convs, reversed(lengths))):
            x = conv.forward(up.forward(x, length))
            if i < len(self.relus):
                x = self.relus[i].forward(x)
        return x

    def backward(self, grad: np.ndarray) -> np.ndarray:
        for i in reversed(range(len(self.convs))):
            if i < len(self.relus):
                grad = self.relus[i].backward(grad)
            grad = self.ups[i].backward(self.convs[i].backward(grad))
        return grad


class Head:
    def __init__(self, arch: Architecture) -> None:
        self.conv = Conv1d(arch.channels[-1], arch.head_channels, arch.head_kernel, 1)
        self.relu = ReLU()
        self.pool = GlobalAvgPool()
        self.dense = Dense(arch.head_channels, 1)
        self.sigmoid = Sigmoid()

    @property
    def layers(self) -> list[Layer]:
        return [self.conv, self.dense]

    def forward(self, z: np.ndarray) -> np.ndarray:
        pooled = self.pool.forward(self.relu.forward(self.conv.forward(z)))
        return self.sigmoid.forward(self.dense.forward(pooled))[:, 0]

    def backward(self, grad_probs: np.ndarray) -> np.ndarray:
        grad = self.dense.backward(self.sigmoid.backward(grad_probs[:, None]))
        return self.conv.backward(self.relu.backward(self.pool.backward(grad)))


class ModelParams:
    """Encoder, decoder and head weights with dotted names like ``encoder.0.weight``."""

    def __init__(self, architecture: Architecture | None = None, signal_length: int | None = None) -> None:
        self.architecture = architecture or Architecture()
        self.encoder = Encoder(self.architecture)
        self.decoder = Decoder(self.architecture)
        self.head = Head(self.architecture)
        self.signal_length = signal_length

    @classmethod
    def init(cls, rng: np.random.Generator, architecture: Architecture | None = None) -> "ModelParams":
        params = cls(architecture)
        for _, layer in params.named_layers():
            layer.init(rng)
        return params

    def named_layers(self) -> list[tuple[str, Layer]]:
        return (
            [(f"encoder.{i}", layer) for i, layer in enumerate(self.encoder.layers)]
            + [(f"decoder.{i}", layer) for i, layer in enumerate(self.decoder.layers)]
            + [(f"head.{i}", layer) for i, layer in enumerate(self.head.layers)]
        )

    def named_params(self) -> dict[str, np.ndarray]:
        return {f"{prefix}.{name}": value for prefix, layer in self.named_layers() for name, value in layer.params.items()}

    def named_grads(self) -> dict[str, np.ndarray]:
        return {f"{prefix}.{name}": value for prefix, layer in self.named_layers() for name, value in layer.grads.items()}

    def zero_grad(self) -> None:
        for _, layer in self.named_layers():
            layer.zero_grad()

    def shapes(self) -> dict[str, list[int]]:
        return {name: list(value.shape) for name, value in self.named_params().items()}

    def load_arrays(self, arrays: dict[str, np.ndarray]) -> None:
        own = self.named_params()
        if set(arrays) != set(own):
            raise ShapeError(f"parameter names differ: {sorted(set(arrays) ^ set(own))}")
        for name, value in arrays.items():
            if value.shape != own[name].shape:
                raise ShapeError(f"{name}: shape {value.shape} != {own[name].shape}")
            own[name][...] = value

    def copy(self) -> "ModelParams":
        clone = ModelParams(self.architecture, self.signal_length)
        clone.load_arrays({name: value.copy() for name, value in self.named_params().items()})
        return clone

    def equals(self, other: "ModelParams", prefix: str = "") -> bool:
        """Bitwise equality of every parameter whose name starts with ``prefix``."""
        mine, theirs = self.named_params(), other.named_params()
        return all(
            np.array_equal(value, theirs[name]) for name, value in mine.items() if name.startswith(prefix)
        )

    def check_input(self, batch: np.ndarray) -> None:
        if batch.ndim != 3 or batch.shape[1] != self.architecture.in_channels:
            raise ShapeError(f"expected N x {self.architecture.in_channels} x L batch, got {batch.shape}")
        if batch.shape[2] < self.architecture.min_length:
            raise ShapeError(f"window length {batch.shape[2]} below minimum {self.architecture.min_length}")

    def __deepcopy__(self, memo: dict) -> "ModelParams":
        return self.copy()


def classifier_forward(params: ModelParams, batch: np.ndarray) -> np.ndarray:
    """Event probabilities, one per window, strictly inside (0, 1) for finite input."""
    batch = np.asarray(batch, dtype=np.float64)
    params.check_input(batch)
    return params.head.forward(params.encoder.forward(batch))


def classifier_backward(params: ModelParams, grad_probs: np.ndarray) -> None:
    params.encoder.backward(params.head.backward(grad_probs))


def autoencoder_forward(params: ModelParams, batch: np.ndarray) -> np.ndarray:
    batch = np.asarray(batch, dtype=np.float64)
    params.check_input(batch)
    z = params.encoder.forward(batch)
    return params.decoder.forward(z, params.encoder.lengths)


def autoencoder_backward(params: ModelParams, grad_recon: np.ndarray) -> None:
    params.encoder.backward(params.decoder.backward(grad_recon))

