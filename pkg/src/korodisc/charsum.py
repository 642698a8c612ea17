"""Character sums of Korobov lattices and the root-count bound behind them.

For a frequency k and generator z, S_N(z, k) is the mean of
exp(2 pi i k . x) over the N lattice points.  Because the lattice is the
cyclic group generated by a(z)/N it equals the indicator of
k . a(z) = 0 (mod N).  For nonzero k in {0..N-1}^s this congruence is a
nonzero polynomial of degree <= s-1 in z, so at most s-1 generators hit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modmath import PrimeContext, korobov_matrix, korobov_vector


@dataclass(frozen=True)
class CharSumResult:
    value: int
    dot_product_residue: int


def _as_freq(k, dim):
    k = np.atleast_1d(np.asarray(k, dtype=np.int64))
    if k.shape != (dim,):
        raise ValueError(f"frequency must have {dim} components, got {k.shape}")
    return k


def char_sum(z: int, k, ctx: PrimeContext) -> CharSumResult:
    """Indicator form of S_N(z, k); k may be any integer vector."""
    k = _as_freq(k, ctx.dim)
    a = korobov_vector(z, ctx).as_array()
    # reduce first so products stay below N^2
    residue = int(np.sum((k % ctx.n_prime) * a % ctx.n_prime) % ctx.n_prime)
    return CharSumResult(int(residue == 0), residue)


def char_sum_oracle(z: int, k, ctx: PrimeContext) -> complex:
    """S_N(z, k) summed term by term over the lattice points."""
    k = _as_freq(k, ctx.dim)
    n_prime = ctx.n_prime
    if not 1 <= z <= n_prime - 1:
        raise ValueError(f"generator z must lie in [1, {n_prime - 1}], got {z}")
    powers = np.array([pow(int(z), j, n_prime) for j in range(ctx.dim)], dtype=np.int64)
    n = np.arange(n_prime, dtype=np.int64)
    x = (n[:, None] * powers[None, :] % n_prime) / n_prime
    return complex(np.mean(np.exp(2j * np.pi * (x @ k.astype(np.float64)))))


def _check_nonzero(k, n_prime):
    if np.all(k % n_prime == 0):
        raise ValueError("frequency is zero mod N; the root-count bound does not apply")


def hit_indicators(k, ctx: PrimeContext) -> np.ndarray:
    """Boolean array over z = 1..M: does k . a(z) vanish mod N."""
    k = _as_freq(k, ctx.dim) % ctx.n_prime
    a = korobov_matrix(np.arange(1, ctx.num_lattices + 1), ctx)
    return (a * k % ctx.n_prime).sum(axis=1) % ctx.n_prime == 0


def count_generator_hits(k, ctx: PrimeContext) -> int:
    """Number of z in 1..M with k . a(z) = 0 mod N (at most s-1 for k != 0)."""
    k = _as_freq(k, ctx.dim)
    _check_nonzero(k, ctx.n_prime)
    return int(np.count_nonzero(hit_indicators(k, ctx)))


def expected_sq_char_sum(k, ctx: PrimeContext) -> float:
    """E_z |S_N(z, k)|^2 for z uniform on 1..M."""
    return count_generator_hits(k, ctx) / ctx.num_lattices


def all_hit_counts(ctx: PrimeContext, batch: int = 1 << 16) -> np.ndarray:
    """Hit counts for every k in {0..N-1}^s, shaped (N,)*s.

    Entry 0 holds M (every generator hits the zero frequency).
    """
    n_prime, dim = ctx.n_prime, ctx.dim
    a = korobov_matrix(np.arange(1, ctx.num_lattices + 1), ctx)  # (M, s)
    if dim * (n_prime - 1) ** 2 >= 2**63:
        raise ValueError("N too large for int64 dot products")
    total = n_prime**dim
    out = np.empty(total, dtype=np.int64)
    for start in range(0, total, batch):
        idx = np.arange(start, min(start + batch, total))
        ks = np.stack(np.unravel_index(idx, (n_prime,) * dim), axis=1)
        dots = (ks @ a.T) % n_prime
        out[idx] = np.count_nonzero(dots == 0, axis=1)
    return out.reshape((n_prime,) * dim)
