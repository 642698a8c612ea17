"""Korobov lattice point sets, random shifts and multiset unions.

Grid point sets hold integer numerators in {0, ..., N-1} (the point is
numerators / N); real point sets hold float coordinates in [0, 1).  Rows are
points and duplicates are kept, so a PointSet is a multiset.

Randomness
----------
All draws go through :func:`make_rng`, which builds a Philox counter-based
generator from ``SeedSequence(seed, spawn_key=(stream,))``.  Campaign trial
``t`` uses stream ``t``; within a stream the generators z_1..z_M are drawn
first (``integers(1, M + 1, size=M)``), then the M shifts as one
``(M, s)`` block.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .modmath import PrimeContext, korobov_matrix

GeneratorMode = Literal["random", "fixed"]
ShiftMode = Literal["continuous", "discrete"]


@dataclass(frozen=True, eq=False)
class PointSet:
    """Homogeneous multiset of points, one row per point.

    ``n_prime`` is set for grid sets and ``None`` for real sets.
    """

    points: np.ndarray
    n_prime: int | None = None

    def __post_init__(self):
        pts = np.asarray(self.points)
        if pts.ndim != 2:
            raise ValueError(f"points must be 2-d (n, s), got shape {pts.shape}")
        if self.n_prime is not None:
            pts = pts.astype(np.int64, copy=False)
            if pts.size and (pts.min() < 0 or pts.max() >= self.n_prime):
                raise ValueError("grid numerators must lie in [0, N)")
        else:
            pts = pts.astype(np.float64, copy=False)
            if pts.size and (pts.min() < 0.0 or pts.max() >= 1.0):
                raise ValueError("real coordinates must lie in [0, 1)")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def kind(self) -> str:
        return "grid" if self.n_prime is not None else "real"

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def coords(self) -> np.ndarray:
        """Float coordinates in [0, 1)."""
        if self.n_prime is None:
            return self.points
        return self.points / self.n_prime

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return (
            self.n_prime == other.n_prime
            and self.points.shape == other.points.shape
            and bool(np.array_equal(self.points, other.points))
        )

    def to_csv(self, fh=None) -> str | None:
        """Write one row per point; grid sets emit integer numerators.

        The first line is a ``#`` header carrying kind, N and s.  Returns the
        text when ``fh`` is None.
        """
        buf = io.StringIO() if fh is None else fh
        if self.n_prime is not None:
            buf.write(f"# kind=grid n_prime={self.n_prime} dim={self.dim}\n")
        else:
            buf.write(f"# kind=real dim={self.dim}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"x{j}" for j in range(self.dim)])
        if self.n_prime is not None:
            w.writerows(self.points.tolist())
        else:
            for row in self.points:
                w.writerow([repr(float(v)) for v in row])
        return buf.getvalue() if fh is None else None

    @classmethod
    def from_csv(cls, fh) -> "PointSet":
        text = fh.read() if hasattr(fh, "read") else str(fh)
        lines = text.splitlines()
        if not lines or not lines[0].startswith("#"):
            raise ValueError("missing '# kind=...' header line")
        meta = dict(tok.split("=", 1) for tok in lines[0][1:].split())
        dim = int(meta["dim"])
        rows = list(csv.reader(lines[2:]))
        if meta["kind"] == "grid":
            arr = np.array(rows, dtype=np.int64).reshape(-1, dim)
            return cls(arr, n_prime=int(meta["n_prime"]))
        if meta["kind"] == "real":
            return cls(np.array(rows, dtype=np.float64).reshape(-1, dim))
        raise ValueError(f"unknown point set kind {meta['kind']!r}")


def _check_vector(vec, dim, name):
    vec = np.asarray(vec)
    if vec.shape != (dim,):
        raise ValueError(f"{name} has shape {vec.shape}, expected ({dim},)")
    return vec


def generate_korobov(z: int, ctx: PrimeContext) -> PointSet:
    """P_N(z): the N grid points n * a(z) mod N, n = 0..N-1."""
    if not 1 <= z <= ctx.n_prime - 1:
        raise ValueError(f"generator z must lie in [1, {ctx.n_prime - 1}], got {z}")
    a = korobov_matrix([z], ctx)[0]
    n = np.arange(ctx.n_prime, dtype=np.int64)[:, None]
    return PointSet(n * a % ctx.n_prime, n_prime=ctx.n_prime)


def shift_discrete(p: PointSet, d) -> PointSet:
    """Add a grid shift (numerators) to every point, modulo N."""
    if p.n_prime is None:
        raise ValueError("discrete shifts apply to grid point sets only")
    d = _check_vector(d, p.dim, "discrete shift").astype(np.int64)
    if d.min() < 0 or d.max() >= p.n_prime:
        raise ValueError("discrete shift numerators must lie in [0, N)")
    return PointSet((p.points + d) % p.n_prime, n_prime=p.n_prime)


def frac(x: np.ndarray) -> np.ndarray:
    """Fractional part with the [0, 1) range enforced after rounding."""
    out = x - np.floor(x)
    out[out >= 1.0] = 0.0
    return out


def shift_continuous(p: PointSet, d) -> PointSet:
    """Map every point x to frac(x + d); grid points become reals first."""
    d = _check_vector(d, p.dim, "continuous shift").astype(np.float64)
    if d.min() < 0.0 or d.max() >= 1.0:
        raise ValueError("continuous shift must lie in [0, 1)^s")
    return PointSet(frac(p.coords() + d))


def multiset_union(parts: Sequence[PointSet]) -> PointSet:
    if not parts:
        raise ValueError("multiset_union needs at least one part")
    first = parts[0]
    for q in parts[1:]:
        if q.n_prime != first.n_prime or q.dim != first.dim:
            raise ValueError("cannot union point sets with different kind, N or s")
    return PointSet(np.concatenate([q.points for q in parts]), n_prime=first.n_prime)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=(int(stream),))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True, eq=False)
class Construction:
    """Generators and shifts of one union; ``shifts`` is (M, s)."""

    ctx: PrimeContext
    generators: tuple[int, ...]
    shifts: np.ndarray
    shift_mode: ShiftMode

    def build(self) -> PointSet:
        a = korobov_matrix(self.generators, self.ctx)  # (M, s)
        n_prime = self.ctx.n_prime
        n = np.arange(n_prime, dtype=np.int64)
        grid = n[None, :, None] * a[:, None, :] % n_prime  # (M, N, s)
        if self.shift_mode == "discrete":
            pts = (grid + self.shifts[:, None, :]) % n_prime
            return PointSet(pts.reshape(-1, self.ctx.dim), n_prime=n_prime)
        pts = frac(grid / n_prime + self.shifts[:, None, :])
        return PointSet(pts.reshape(-1, self.ctx.dim))


def draw_construction(
    ctx: PrimeContext,
    generator_mode: GeneratorMode,
    shift_mode: ShiftMode,
    rng: np.random.Generator,
) -> Construction:
    m = ctx.num_lattices
    if generator_mode == "random":
        zs = rng.integers(1, m + 1, size=m)
    elif generator_mode == "fixed":
        zs = np.arange(1, m + 1)
    else:
        raise ValueError(f"unknown generator mode {generator_mode!r}")
    if shift_mode == "discrete":
        shifts = rng.integers(0, ctx.n_prime, size=(m, ctx.dim))
    elif shift_mode == "continuous":
        shifts = rng.random((m, ctx.dim))
    else:
        raise ValueError(f"unknown shift mode {shift_mode!r}")
    return Construction(ctx, tuple(int(z) for z in zs), shifts, shift_mode)


def sample_construction(
    ctx: PrimeContext,
    generator_mode: GeneratorMode,
    shift_mode: ShiftMode,
    seed: int,
) -> PointSet:
    """Draw and build one union of M shifted Korobov sets from ``seed``."""
    return draw_construction(ctx, generator_mode, shift_mode, make_rng(seed)).build()
