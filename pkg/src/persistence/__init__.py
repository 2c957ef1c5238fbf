"""
Persistence Module - Resumable grid state

Contains:
- grid_store.py: GridStore (atomic JSON grid state + per-cell result files)

The coordinator saves the grid after a batch is started and after its
results are recorded, so an interrupted grid picks up the running batch
on the next invocation.

=== Usage ===

    from src.persistence import GridStore

    store = GridStore(output_dir / "grid")
    state = store.load_or_create(budget=25)
"""
from .grid_store import GridStore, write_atomic

__all__ = ["GridStore", "write_atomic"]
