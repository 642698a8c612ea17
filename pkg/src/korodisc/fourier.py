"""Fourier coefficients of box indicators on the torus and on the grid.

Continuous coefficients c_k(b) are those of 1_[0,b) on [0, 1)^s; discrete
coefficients C_k(b) are those of the same indicator restricted to the grid
{0, 1/N, ..., (N-1)/N}^s.  Both factorise over coordinates.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .box import Box, volume
from .errors import check_capacity

DEFAULT_FREQ_CAP = 10**6


def cont_coeff_1d(k: int, b: float) -> complex:
    if not 0.0 <= b <= 1.0:
        raise ValueError(f"b must lie in [0, 1], got {b}")
    if k == 0:
        return complex(b)
    return (1 - cmath.exp(-2j * math.pi * k * b)) / (2j * math.pi * k)


def cont_coeff(k, b: Box) -> complex:
    k = tuple(int(v) for v in np.atleast_1d(k))
    if len(k) != b.dim:
        raise ValueError(f"frequency has {len(k)} components, box has {b.dim}")
    out = complex(1.0)
    for kj, bj in zip(k, b.corner):
        out *= cont_coeff_1d(kj, bj)
    return out


def _cont_coeff_array(ks: np.ndarray, b: float) -> np.ndarray:
    ks = np.asarray(ks, dtype=np.float64)
    out = np.empty(ks.shape, dtype=np.complex128)
    zero = ks == 0
    out[zero] = b
    kz = ks[~zero]
    out[~zero] = (1 - np.exp(-2j * np.pi * kz * b)) / (2j * np.pi * kz)
    return out


def _unit_root(m, n_prime):
    """exp(-2 pi i m / N) with m reduced mod N first."""
    return np.exp(-2j * np.pi * (np.asarray(m, dtype=np.int64) % n_prime) / n_prime)


def disc_coeff_1d(k: int, b_num: int, n_prime: int) -> complex:
    if not 0 <= k <= n_prime - 1:
        raise ValueError(f"k must lie in [0, {n_prime - 1}], got {k}")
    if not 0 <= b_num <= n_prime:
        raise ValueError(f"b_num must lie in [0, {n_prime}], got {b_num}")
    if k == 0:
        return complex(b_num / n_prime)
    num = 1 - _unit_root(k * b_num, n_prime)
    den = 1 - _unit_root(k, n_prime)
    return complex(num / den / n_prime)


def disc_coeff_table(b: Box) -> np.ndarray:
    """Array of shape (s, N) whose [j, k] entry is C_k(b_j)."""
    if not b.is_grid:
        raise ValueError("discrete coefficients need a grid box")
    n = b.n_prime
    k = np.arange(1, n, dtype=np.int64)
    den = 1 - _unit_root(k, n)
    out = np.empty((b.dim, n), dtype=np.complex128)
    for j, m in enumerate(b.grid_numerators):
        out[j, 0] = m / n
        out[j, 1:] = (1 - _unit_root(k * m, n)) / den / n
    return out


def disc_coeff(k, b: Box) -> complex:
    if not b.is_grid:
        raise ValueError("discrete coefficients need a grid box")
    k = tuple(int(v) for v in np.atleast_1d(k))
    if len(k) != b.dim:
        raise ValueError(f"frequency has {len(k)} components, box has {b.dim}")
    out = complex(1.0)
    for kj, m in zip(k, b.grid_numerators):
        out *= disc_coeff_1d(kj, m, b.n_prime)
    return out


def _outer_sum_except_origin(factors: list[np.ndarray]) -> float:
    """Sum of prod_j factors[j][k_j] over the full index grid, minus the origin.

    The origin is index 0 in every factor.  The full tensor is materialised,
    so every term is summed individually.
    """
    full = factors[0]
    for f in factors[1:]:
        full = np.multiply.outer(full, f)
    origin = math.prod(float(f[0]) for f in factors)
    return float(np.sum(full)) - origin


def discrete_sq_sum(b: Box, cap: int = DEFAULT_FREQ_CAP) -> float:
    """Sum of |C_k(b)|^2 over every nonzero k in {0..N-1}^s."""
    check_capacity("discrete frequency sum", b.n_prime**b.dim, cap)
    table = np.abs(disc_coeff_table(b)) ** 2
    return _outer_sum_except_origin(list(table))


def parseval_discrete_residual(b: Box, cap: int = DEFAULT_FREQ_CAP) -> float:
    """|sum_{k != 0} |C_k(b)|^2 - lam (1 - lam)| by exhaustive summation."""
    lam = volume(b)
    return abs(discrete_sq_sum(b, cap) - lam * (1 - lam))


def parseval_continuous_truncated(
    b: Box, k_max: int, cap: int = 10**7
) -> float:
    """Sum of |c_k(b)|^2 over nonzero k in {-K..K}^s (a lower bound of lam(1-lam))."""
    if k_max < 1:
        raise ValueError("k_max must be positive")
    check_capacity("continuous frequency sum", (2 * k_max + 1) ** b.dim, cap)
    # index 0 is k = 0 so the origin term sits at the front of every factor
    ks = np.concatenate([[0], np.arange(1, k_max + 1), -np.arange(1, k_max + 1)])
    factors = [np.abs(_cont_coeff_array(ks, bj)) ** 2 for bj in b.corner]
    return _outer_sum_except_origin(factors)


def continuous_tail_bound(dim: int, k_max: int) -> float:
    """Upper bound 2s/(pi^2 K) on the coefficient mass outside {-K..K}^s."""
    return 2 * dim / (math.pi**2 * k_max)


def remainder_term(b: Box, n_prime: int, h_max: int) -> float:
    """Aliased coefficient mass sum_{h != 0, |h_j| <= H} prod_j |c_{N h_j}(b_j)|^2.

    Coordinates with b_j = 1 contribute a factor 1 (their nonzero aliases
    vanish), so they drop out as in the inactive-coordinate reduction.  The
    cube sum is evaluated through its product form, which equals the
    term-by-term sum exactly.
    """
    if h_max < 1:
        raise ValueError("h_max must be positive")
    h = np.arange(1, h_max + 1)
    full, base = 1.0, 1.0
    for bj in b.corner:
        alias = np.abs(_cont_coeff_array(n_prime * h, bj)) ** 2
        full *= bj * bj + 2.0 * float(np.sum(alias))
        base *= bj * bj
    return full - base


def remainder_tail_bound(n_prime: int, h_max: int) -> float:
    """Per-coordinate bound on sum_{|h| > H} |c_{N h}(b)|^2, i.e. 2/(pi^2 N^2 H)."""
    return 2.0 / (math.pi**2 * n_prime**2 * h_max)


def remainder_cap(dim: int, n_prime: int) -> float:
    return dim / (3.0 * n_prime**2)
