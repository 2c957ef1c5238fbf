import numpy as np


def aggregate(values) -> tuple[float, float]:
    """Mean and population standard deviation over seeds."""
    values = np.asarray(list(values), dtype=np.float64)
    if values.size == 0:
        raise ValueError("cannot aggregate an empty list")
    return float(values.mean()), float(values.std())
