"""Layers with hand-written backward passes.

Every layer caches what its backward pass needs during ``forward`` and
raises MissingCacheError when ``backward`` runs without it. Tensors are
batched: convolutions take N x C x L, dense layers N x D.
"""
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import expit

from src.core.exceptions import MissingCacheError, ShapeError

PROB_EPS = 1e-7


@dataclass
class Conv1dCache:
    windows: np.ndarray
    input_length: int
    pad_left: int
    weight: np.ndarray
    stride: int


def conv_output_length(length: int, stride: int) -> int:
    return -(-length // stride)


def conv1d_forward(
    x: np.ndarray, weight: np.ndarray, bias: np.ndarray, stride: int = 1
) -> tuple[np.ndarray, Conv1dCache]:
    """Same-padded cross-correlation followed by striding; output length ceil(L / stride)."""
    squeeze = x.ndim == 2
    if squeeze:
        x = x[None]
    if x.ndim != 3:
        raise ShapeError(f"conv1d input must be (N,) C x L, got shape {x.shape}")
    c_out, c_in, kernel = weight.shape
    n, channels, length = x.shape
    if channels != c_in:
        raise ShapeError(f"conv1d expects {c_in} input channels, got {channels}")
    if length < kernel:
        raise ShapeError(f"conv1d input length {length} shorter than kernel {kernel}")
    if bias.shape != (c_out,):
        raise ShapeError(f"bias shape {bias.shape} does not match {c_out} output channels")

    pad_left = (kernel - 1) // 2
    padded = np.pad(x, ((0, 0), (0, 0), (pad_left, kernel - 1 - pad_left)))
    windows = sliding_window_view(padded, kernel, axis=2)[:, :, ::stride, :]
    out = np.tensordot(windows, weight, axes=([1, 3], [1, 2])).transpose(0, 2, 1) + bias[None, :, None]
    cache = Conv1dCache(windows, length, pad_left, weight, stride)
    return (out[0] if squeeze else out), cache


def conv1d_backward(
    grad_out: np.ndarray, cache: Conv1dCache | None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(input_grad, weight_grad, bias_grad) of the cached forward call."""
    if cache is None:
        raise MissingCacheError("conv1d backward called before forward")
    squeeze = grad_out.ndim == 2
    if squeeze:
        grad_out = grad_out[None]
    windows, weight, stride = cache.windows, cache.weight, cache.stride
    n, c_in, n_out, kernel = windows.shape
    if grad_out.shape != (n, weight.shape[0], n_out):
        raise ShapeError(f"upstream gradient shape {grad_out.shape} does not match output {(n, weight.shape[0], n_out)}")

    weight_grad = np.tensordot(grad_out, windows, axes=([0, 2], [0, 2]))
    bias_grad = grad_out.sum(axis=(0, 2))
    window_grad = np.tensordot(grad_out, weight, axes=([1], [0]))  # N x L' x C_in x K

    padded_grad = np.zeros((n, c_in, cache.input_length + kernel - 1))
    for tap in range(kernel):
        padded_grad[:, :, tap : tap + stride * n_out : stride] += window_grad[:, :, :, tap].transpose(0, 2, 1)
    input_grad = padded_grad[:, :, cache.pad_left : cache.pad_left + cache.input_length]
    return (input_grad[0] if squeeze else input_grad), weight_grad, bias_grad


class Layer:
    """Base layer: named parameter arrays and their gradients."""

    def __init__(self) -> None:
        self.params: dict[str, np.ndarray] = {}
        self.grads: dict[str, np.ndarray] = {}

    def zero_grad(self) -> None:
        self.grads = {name: np.zeros_like(value) for name, value in self.params.items()}

    def init(self, rng: np.random.Generator) -> None:
        """Parameter-free layers have nothing to draw."""


class Conv1d(Layer):
    def __init__(self, c_in: int, c_out: int, kernel: int, stride: int = 1) -> None:
        super().__init__()
        self.stride = stride
        self.params = {"weight": np.zeros((c_out, c_in, kernel)), "bias": np.zeros(c_out)}
        self.zero_grad()
        self._cache: Conv1dCache | None = None

    def init(self, rng: np.random.Generator) -> None:
        """Uniform fan-in scaling, zero bias."""
        c_out, c_in, kernel = self.params["weight"].shape
        limit = 1.0 / np.sqrt(c_in * kernel)
        self.params["weight"][...] = rng.uniform(-limit, limit, size=(c_out, c_in, kernel))
        self.params["bias"][...] = 0.0

    def forward(self, x: np.ndarray) -> np.ndarray:
        out, self._cache = conv1d_forward(x, self.params["weight"], self.params["bias"], self.stride)
        return out

    def backward(self, grad_out: np.ndarray) -> np.ndarray:
        grad_in, weight_grad, bias_grad = conv1d_backward(grad_out, self._cache)
        self.grads["weight"] += weight_grad
        self.grads["bias"] += bias_grad
        return grad_in


class Dense(Layer):
    def __init__(self, d_in: int, d_out: int) -> None:
        super().__init__()
        self.params = {"weight": np.zeros((d_out, d_in)), "bias": np.zeros(d_out)}
        self.zero_grad()
        self._x: np.ndarray | None = None

    def init(self, rng: np.random.Generator) -> None:
        d_out, d_in = self.params["weight"].shape
        limit = 1.0 / np.sqrt(d_in)
        self.params["weight"][...] = rng.uniform(-limit, limit, size=(d_out, d_in))
        self.params["bias"][...] = 0.0

    def forward(self, x: np.ndarray) -> np.ndarray:
        if x.ndim != 2 or x.shape[1] != self.params["weight"].shape[1]:
            raise ShapeError(f"dense layer expects N x {self.params['weight'].shape[1]}, got {x.shape}")
        self._x = x
        return x @ self.params["weight"].T + self.params["bias"]

    def backward(self, grad_out: np.ndarray) -> np.ndarray:
        if self._x is None:
            raise MissingCacheError("dense backward called before forward")
        self.grads["weight"] += grad_out.T @ self._x
        self.grads["bias"] += grad_out.sum(axis=0)
        return grad_out @ self.params["weight"]


class ReLU(Layer):
    def __init__(self) -> None:
        super().__init__()
        self._mask: np.ndarray | None = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        mask = x > 0
        self._mask = mask
        return np.where(mask, x, 0.0)

    def backward(self, grad_out: np.ndarray) -> np.ndarray:
        if self._mask is None:
            raise MissingCacheError("relu backward called before forward")
        return np.where(self._mask, grad_out, 0.0)


class Upsample(Layer):
    """Nearest-neighbour x2 upsampling cropped to a target length."""

    def __init__(self, factor: int = 2) -> None:
        super().__init__()
        self.factor = factor
        self._shape: tuple[int, ...] | None = None

    def forward(self, x: np.ndarray, length: int) -> np.ndarray:
        if length > x.shape[-1] * self.factor:
            raise ShapeError(f"cannot upsample length {x.shape[-1]} to {length}")
        self._shape = x.shape
        return np.repeat(x, self.factor, axis=-1)[..., :length]

    def backward(self, grad_out: np.ndarray) -> np.ndarray:
        if self._shape is None:
            raise MissingCacheError("upsample backward called before forward")
        full = np.zeros(self._shape[:-1] + (self._shape[-1] * self.factor,))
        full[..., : grad_out.shape[-1]] = grad_out
        return full.reshape(self._shape + (self.factor,)).sum(axis=-1)


class GlobalAvgPool(Layer):
    def __init__(self) -> None:
        super().__init__()
        self._length: int | None = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._length = x.shape[-1]
        return x.mean(axis=-1)

    def backward(self, grad_out: np.ndarray) -> np.ndarray:
        if self._length is None:
            raise MissingCacheError("pooling backward called before forward")
        return np.repeat(grad_out[..., None] / self._length, self._length, axis=-1)


class Sigmoid(Layer):
    def __init__(self) -> None:
        super().__init__()
        self._out: np.ndarray | None = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        out = expit(x)
        self._out = out
        return out

    def backward(self, grad_out: np.ndarray) -> np.ndarray:
        if self._out is None:
            raise MissingCacheError("sigmoid backward called before forward")
        return grad_out * self._out * (1.0 - self._out)


def bce_loss(probs: np.ndarray, labels: np.ndarray) -> tuple[float, np.ndarray]:
    """Mean binary cross-entropy on probabilities clamped to [1e-7, 1 - 1e-7], and its gradient."""
    probs = np.asarray(probs, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.float64)
    clamped = np.clip(probs, PROB_EPS, 1.0 - PROB_EPS)
    n = probs.size
    loss = -float(np.mean(labels * np.log(clamped) + (1.0 - labels) * np.log(1.0 - clamped)))
    inside = (probs > PROB_EPS) & (probs < 1.0 - PROB_EPS)
    grad = np.where(inside, (-labels / clamped + (1.0 - labels) / (1.0 - clamped)) / n, 0.0)
    return loss, grad


def mse_loss(recon: np.ndarray, target: np.ndarray) -> tuple[float, np.ndarray]:
    if recon.shape != target.shape:
        raise ShapeError(f"reconstruction shape {recon.shape} != target shape {target.shape}")
    diff = recon - target
    return float(np.mean(diff**2)), 2.0 * diff / diff.size
