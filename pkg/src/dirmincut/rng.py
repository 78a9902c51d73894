"""Seeded, splittable random streams."""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_SEED


def make_rng(seed: int = DEFAULT_SEED) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed & ((1 << 64) - 1)))


def split(rng: np.random.Generator, count: int) -> list[np.random.Generator]:
    return list(rng.spawn(count))


def child(rng: np.random.Generator) -> np.random.Generator:
    return rng.spawn(1)[0]
