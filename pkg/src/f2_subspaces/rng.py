"""Seeded counter-based random number generation.

Every randomized routine in the package receives a ``numpy.random.Generator`` explicitly.
Generators are built on Philox so that children can be split off hierarchically and handed
to concurrent tasks without sharing state.
"""

from __future__ import annotations

from typing import Optional

import numpy as np


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """Return a Philox generator for a 64-bit seed (fresh entropy when ``seed`` is None)."""

    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def spawn(rng: np.random.Generator, count: int) -> list[np.random.Generator]:
    """Split ``count`` independent child generators off ``rng``."""

    return list(rng.spawn(count))


def child_seeds(master_seed: int, count: int) -> list[int]:
    """Derive ``count`` reproducible 64-bit seeds from one master seed."""

    children = np.random.SeedSequence(master_seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]
