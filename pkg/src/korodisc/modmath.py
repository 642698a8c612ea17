"""Arithmetic in the prime field Z_N and Korobov generating vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Products of two residues must fit in a signed 64-bit integer.
MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division.

    Intended for desk-scale moduli (n < 10**6 or so); the cost is O(sqrt(n)).
    """
    if n < 2:
        raise ValueError(f"is_prime requires n >= 2, got {n}")
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeContext:
    """Parameters of a union construction: prime N, dimension s, lattice count M.

    ``num_lattices`` defaults to ``n_prime - 1``.
    """

    n_prime: int
    dim: int
    num_lattices: int | None = None
    n_tot: int = field(init=False)

    def __post_init__(self):
        if self.n_prime < 2 or self.n_prime >= MAX_PRIME:
            raise ValueError(f"n_prime must lie in [2, 2**31), got {self.n_prime}")
        if not is_prime(self.n_prime):
            raise ValueError(f"{self.n_prime} is not prime")
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")
        m = self.n_prime - 1 if self.num_lattices is None else self.num_lattices
        if not 1 <= m <= self.n_prime - 1:
            raise ValueError(
                f"num_lattices must lie in [1, {self.n_prime - 1}], got {m}"
            )
        object.__setattr__(self, "num_lattices", int(m))
        object.__setattr__(self, "n_tot", int(m) * self.n_prime)


@dataclass(frozen=True)
class GeneratorVector:
    z: int
    components: tuple[int, ...]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.components, dtype=np.int64)


def korobov_vector(z: int, ctx: PrimeContext) -> GeneratorVector:
    """Return a(z) = (1, z, z^2, ..., z^(s-1)) reduced mod N."""
    n = ctx.n_prime
    if not 1 <= z <= n - 1:
        raise ValueError(f"generator z must lie in [1, {n - 1}], got {z}")
    comps = [1]
    for _ in range(ctx.dim - 1):
        comps.append(comps[-1] * z % n)
    return GeneratorVector(z=int(z), components=tuple(comps))


def korobov_matrix(zs, ctx: PrimeContext) -> np.ndarray:
    """Stack a(z) for every z in ``zs`` into an int64 array of shape (len(zs), s)."""
    zs = np.asarray(zs, dtype=np.int64)
    if zs.size and (zs.min() < 1 or zs.max() > ctx.n_prime - 1):
        raise ValueError(f"generators must lie in [1, {ctx.n_prime - 1}]")
    out = np.empty((zs.size, ctx.dim), dtype=np.int64)
    out[:, 0] = 1
    for j in range(1, ctx.dim):
        out[:, j] = out[:, j - 1] * zs % ctx.n_prime
    return out
