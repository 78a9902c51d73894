"""Tunable constants shared by the sparsifiers and drivers."""

from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_SEED = 0xD1CE


@dataclass(frozen=True)
class SparsifyConstants:
    c_tau: float = 1 / 64
    c_delta: float = 64.0
    c_w: float = 64.0
    # Multiplier on ln n wherever a logarithmic repetition count is needed.
    log_factor: float = 2.0


DEFAULT_CONSTANTS = SparsifyConstants()


def log_count(n: int, factor: float = DEFAULT_CONSTANTS.log_factor) -> int:
    """ceil(factor * ln n), at least 1."""
    return max(1, math.ceil(factor * math.log(max(n, 2))))


@dataclass(frozen=True)
class DriverConfig:
    k: int = 0  # 0 selects ceil(m^(1/3) + sqrt(n))
    eps: float = 0.25
    seed: int = DEFAULT_SEED
    trees_per_guess: int = 0  # 0 selects ceil(2 ln n)
    variant: str = "rounding"
    maxflow_budget: int | None = None
    exhaustive: bool = False
    inner_eps: float = 0.1
    pack_eps: float = 0.1
    pack_max_iters: int = 400
    constants: SparsifyConstants = DEFAULT_CONSTANTS

    def resolve_k(self, n: int, m: int) -> int:
        if self.k > 0:
            return self.k
        return max(1, math.ceil(m ** (1 / 3) + math.sqrt(n)))

    def resolve_trees(self, n: int) -> int:
        if self.trees_per_guess > 0:
            return self.trees_per_guess
        return log_count(n, self.constants.log_factor)
