"""Deterministic seed derivation shared by every randomized component.

All randomness in the package flows through child streams of one root seed.
A child is addressed by an integer path, e.g. (trial, restart), and is
realized as ``SeedSequence(root, spawn_key=path)`` feeding a PCG64 generator;
the same (root, path) pair produces the same stream on every platform, which
is what makes reports reproducible byte for byte.
"""

from __future__ import annotations

import numpy as np

__all__ = ["child_rng", "child_seed"]


def child_rng(seed: int, *path: int) -> np.random.Generator:
    """Generator for the child stream addressed by ``path`` under ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(i) for i in path))
    return np.random.default_rng(ss)


def child_seed(seed: int, *path: int) -> int:
    """Integer seed derived from the same child stream (for APIs taking ints)."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(i) for i in path))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
