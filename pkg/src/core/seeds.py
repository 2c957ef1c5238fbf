"""Named random substreams.

Every stage draws from its own generator derived from the root seed and a
path of names, e.g. ``substream(root, "split", seed_index)``. Names are
hashed with CRC32 so the mapping is stable across interpreter runs.
"""
import zlib

import numpy as np


def _key(root_seed: int, names: tuple[str | int, ...]) -> list[int]:
    return [int(root_seed)] + [zlib.crc32(str(name).encode("utf-8")) for name in names]


def substream(root_seed: int, *names: str | int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(_key(root_seed, names)))


def derive_seed(root_seed: int, *names: str | int) -> int:
    """A plain integer seed for configs that store seeds rather than generators."""
    state = np.random.SeedSequence(_key(root_seed, names)).generate_state(1)
    return int(state[0])
