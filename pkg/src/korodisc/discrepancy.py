"""Local and star discrepancy of finite point multisets.

Boxes are half-open, [0, b).  :func:`star_disc_grid` maximises |disc| over
corners in {0, 1/N, ..., 1}^s, which by the grid-discretisation inequality
gives D* <= grid_max + s/N.  :func:`star_disc_exact` computes D* itself from
the critical boxes spanned by the point coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .box import Box, volume
from .errors import check_capacity
from .modmath import PrimeContext
from .pointset import PointSet

GRID_CAP = 10**7
EXACT_CAP = 10**7


def _n_prime(ctx) -> int:
    return ctx.n_prime if isinstance(ctx, PrimeContext) else int(ctx)


def _counts_inside(p: PointSet, b: Box) -> int:
    if b.dim != p.dim:
        raise ValueError(f"box has dimension {b.dim}, points have {p.dim}")
    if b.is_grid and p.n_prime == b.n_prime:
        inside = np.all(p.points < np.asarray(b.grid_numerators), axis=1)
    else:
        inside = np.all(p.coords() < np.asarray(b.corner), axis=1)
    return int(np.count_nonzero(inside))


def local_disc(p: PointSet, b: Box) -> float:
    """Fraction of points (with multiplicity) in [0, b) minus its volume."""
    if len(p) == 0:
        raise ValueError("local discrepancy of an empty point set")
    count = _counts_inside(p, b)
    if b.is_grid:
        return float(Fraction(count, len(p)) - b.volume_exact())
    return count / len(p) - volume(b)


def local_disc_exact(p: PointSet, b: Box) -> Fraction:
    """Rational local discrepancy for a grid point set and a grid box."""
    if len(p) == 0:
        raise ValueError("local discrepancy of an empty point set")
    if p.n_prime is None or not b.is_grid or p.n_prime != b.n_prime:
        raise ValueError("exact local discrepancy needs grid points and a grid box with the same N")
    return Fraction(_counts_inside(p, b), len(p)) - b.volume_exact()


def grid_bins(p: PointSet, n_prime: int) -> np.ndarray:
    """Per-coordinate bin c with: x_j < m/N  iff  c_j < m, for m = 0..N.

    For grid sets on the same N this is just the numerator.  For other sets
    the floor is corrected against the floating values m/N, so membership
    agrees with :func:`local_disc` exactly.
    """
    if p.n_prime == n_prime:
        return p.points
    x = p.coords()
    c = np.floor(x * n_prime).astype(np.int64)
    c = np.where((c + 1) / n_prime <= x, c + 1, c)
    c = np.where(c / n_prime > x, c - 1, c)
    return np.clip(c, 0, n_prime - 1)


def grid_counts(p: PointSet, n_prime: int, cap: int = GRID_CAP) -> np.ndarray:
    """Counts of points in every grid box, shaped (N+1,)*s and indexed by numerators."""
    s = p.dim
    check_capacity("grid box sweep", (n_prime + 1) ** s, cap)
    bins = grid_bins(p, n_prime) + 1
    hist = np.zeros((n_prime + 1,) * s, dtype=np.int64)
    np.add.at(hist, tuple(bins.T), 1)
    for axis in range(s):
        np.cumsum(hist, axis=axis, out=hist)
    return hist


@dataclass(frozen=True)
class DiscrepancyReport:
    grid_max: float
    upper_bound: float
    argmax_box: Box
    exact: float | None = None

    def to_dict(self) -> dict:
        return {
            "grid_max": self.grid_max,
            "upper_bound": self.upper_bound,
            "exact": self.exact,
            "argmax_box": {
                "corner": list(self.argmax_box.corner),
                "numerators": list(self.argmax_box.grid_numerators),
                "n_prime": self.argmax_box.n_prime,
            },
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def star_disc_grid(p: PointSet, ctx: PrimeContext | int, cap: int = GRID_CAP) -> DiscrepancyReport:
    """Maximise |local_disc| over all corners b in {0, 1/N, ..., 1}^s.

    Counts come from an s-fold prefix sum over a histogram of grid bins, so
    the cost is O(|p| s + (N+1)^s s).  Disc values are formed as exact
    integers over |p| N^s and converted to float once.
    """
    if len(p) == 0:
        raise ValueError("star discrepancy of an empty point set")
    n_prime = _n_prime(ctx)
    s = p.dim
    counts = grid_counts(p, n_prime, cap)
    total = len(p)
    denom = total * n_prime**s
    if denom >= 2**62:
        raise ValueError("|p| * N^s too large for exact integer sweep")
    m = np.arange(n_prime + 1, dtype=np.int64)
    vol_num = m
    for _ in range(s - 1):
        vol_num = np.multiply.outer(vol_num, m)
    numer = counts * n_prime**s - total * vol_num
    flat = int(np.argmax(np.abs(numer)))
    idx = np.unravel_index(flat, numer.shape)
    grid_max = abs(int(numer[idx])) / denom
    return DiscrepancyReport(
        grid_max=grid_max,
        upper_bound=grid_max + s / n_prime,
        argmax_box=Box.grid(tuple(int(i) for i in idx), n_prime),
    )


def _critical_values(p: PointSet):
    """Per-coordinate sorted distinct values plus the right end 1, and ranks.

    Grid sets use integer numerators with scale N; real sets use floats with
    scale 1.
    """
    if p.n_prime is not None:
        pts, one = p.points, p.n_prime
    else:
        pts, one = p.points, 1.0
    values, ranks = [], []
    for j in range(p.dim):
        u, r = np.unique(pts[:, j], return_inverse=True)
        values.append(np.append(u, one))
        ranks.append(r.reshape(-1))
    return values, np.stack(ranks, axis=1), one


def star_disc_exact(p: PointSet, cap: int = EXACT_CAP) -> float:
    """Exact star discrepancy sup_b |disc(p, [0, b))| via critical boxes.

    For each corner b drawn from (distinct coordinates + {1}) per axis, the
    open-box defect vol(b) - #{x < b}/n and the closed-box excess
    #{x <= b}/n - vol(b) are evaluated; D* is the largest of these and 0.
    """
    n = len(p)
    if n == 0:
        raise ValueError("star discrepancy of an empty point set")
    values, ranks, one = _critical_values(p)
    shape = tuple(len(v) for v in values)
    check_capacity("critical box enumeration", int(np.prod(shape, dtype=object)), cap)

    closed = np.zeros(shape, dtype=np.int64)
    np.add.at(closed, tuple(ranks.T), 1)
    for axis in range(p.dim):
        np.cumsum(closed, axis=axis, out=closed)
    strict = np.pad(closed, [(1, 0)] * p.dim)[tuple(slice(0, k) for k in shape)]

    if p.n_prime is not None:
        # exact: everything over the common denominator n * N^s
        vol = values[0].astype(np.int64)
        for v in values[1:]:
            vol = np.multiply.outer(vol, v.astype(np.int64))
        scale = p.n_prime**p.dim
        if n * scale >= 2**62:
            raise ValueError("|p| * N^s too large for exact integer evaluation")
        plus = n * vol - strict * scale
        minus = closed * scale - n * vol
        best = max(int(plus.max()), int(minus.max()), 0)
        return best / (n * scale)

    vol = values[0]
    for v in values[1:]:
        vol = np.multiply.outer(vol, v)
    plus = vol - strict / n
    minus = closed / n - vol
    return max(float(plus.max()), float(minus.max()), 0.0)
