"""Anchored boxes [0, b) in the unit cube."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np


@dataclass(frozen=True)
class Box:
    """The anchored box J(b) = [0, b).

    Grid boxes (corner in {0, 1/N, ..., 1}^s) additionally carry the integer
    numerators and N, so counting and volume stay exact.
    """

    corner: tuple[float, ...]
    grid_numerators: tuple[int, ...] | None = None
    n_prime: int | None = None

    def __post_init__(self):
        corner = tuple(float(c) for c in self.corner)
        if not corner:
            raise ValueError("box must have at least one coordinate")
        if any(not 0.0 <= c <= 1.0 for c in corner):
            raise ValueError(f"box corner must lie in [0, 1]^s, got {corner}")
        object.__setattr__(self, "corner", corner)
        if self.grid_numerators is not None:
            if self.n_prime is None:
                raise ValueError("grid boxes need n_prime")
            nums = tuple(int(m) for m in self.grid_numerators)
            if any(not 0 <= m <= self.n_prime for m in nums):
                raise ValueError(f"grid numerators must lie in [0, {self.n_prime}]")
            if tuple(m / self.n_prime for m in nums) != corner:
                raise ValueError("corner does not match grid numerators / N")
            object.__setattr__(self, "grid_numerators", nums)

    @classmethod
    def grid(cls, numerators, n_prime: int) -> "Box":
        nums = tuple(int(m) for m in np.atleast_1d(numerators))
        return cls(tuple(m / n_prime for m in nums), nums, int(n_prime))

    @classmethod
    def unit(cls, dim: int) -> "Box":
        return cls((1.0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.corner)

    @property
    def is_grid(self) -> bool:
        return self.grid_numerators is not None

    def volume_exact(self) -> Fraction:
        if not self.is_grid:
            raise ValueError("exact volume is only defined for grid boxes")
        return Fraction(prod(self.grid_numerators), self.n_prime**self.dim)


def volume(b: Box) -> float:
    """Lebesgue measure of [0, b); computed from numerators for grid boxes."""
    if b.is_grid:
        return float(b.volume_exact())
    return float(prod(b.corner))


def grid_boxes(n_prime: int, dim: int):
    """Iterate over every grid box with corner in {0, 1/N, ..., 1}^dim."""
    for nums in np.ndindex(*(n_prime + 1,) * dim):
        yield Box.grid(nums, n_prime)
