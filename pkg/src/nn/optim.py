import numpy as np


class Adam:
    """Adaptive moment estimation over a dict of named arrays, updated in place.

    Names outside ``trainable`` are never touched, which is how encoder
    freezing is done.
    """

    def __init__(
        self,
        params: dict[str, np.ndarray],
        learning_rate: float = 1e-3,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
        trainable: set[str] | None = None,
    ) -> None:
        self.params = params
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.trainable = sorted(trainable if trainable is not None else params)
        self.m = {name: np.zeros_like(params[name]) for name in self.trainable}
        self.v = {name: np.zeros_like(params[name]) for name in self.trainable}
        self.t = 0

    def step(self, grads: dict[str, np.ndarray]) -> None:
        self.t += 1
        correction1 = 1.0 - self.beta1**self.t
        correction2 = 1.0 - self.beta2**self.t
        for name in self.trainable:
            grad = grads[name]
            self.m[name] = self.beta1 * self.m[name] + (1.0 - self.beta1) * grad
            self.v[name] = self.beta2 * self.v[name] + (1.0 - self.beta2) * grad**2
            m_hat = self.m[name] / correction1
            v_hat = self.v[name] / correction2
            self.params[name] -= self.learning_rate * m_hat / (np.sqrt(v_hat) + self.eps)
