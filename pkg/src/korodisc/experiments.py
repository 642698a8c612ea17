"""Seeded Monte Carlo campaigns and exact checks of the shift lemmas.

Trial ``t`` of a campaign draws from ``make_rng(master_seed, t)`` (see
:mod:`korodisc.pointset`), so trials are independent of execution order and
of each other.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .bounds import BoundSpec, Case, theorem_bound
from .box import Box
from .charsum import all_hit_counts
from .discrepancy import star_disc_grid
from .errors import check_capacity
from .fourier import disc_coeff_table
from .modmath import PrimeContext, korobov_matrix
from .pointset import draw_construction, frac, generate_korobov, make_rng

SHIFT_CAP = 10**7
CSV_HEADER = ["trial", "generators", "grid_max", "upper_bound", "bound", "violated"]
QUANTILES = (0.5, 0.9, 0.99, 1.0)


@dataclass(frozen=True)
class CampaignConfig:
    spec: BoundSpec
    num_trials: int
    master_seed: int = 0
    record_boxes: bool = False
    output_path: str | None = None

    def __post_init__(self):
        if self.num_trials < 1:
            raise ValueError(f"num_trials must be at least 1, got {self.num_trials}")

    def to_dict(self) -> dict:
        ctx = self.spec.ctx
        return {
            "case": self.spec.case.value,
            "n_prime": ctx.n_prime,
            "dim": ctx.dim,
            "num_lattices": ctx.num_lattices,
            "failure_prob": self.spec.failure_prob,
            "num_trials": self.num_trials,
            "master_seed": self.master_seed,
            "record_boxes": self.record_boxes,
            "output_path": self.output_path,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CampaignConfig":
        ctx = PrimeContext(int(d["n_prime"]), int(d["dim"]), d.get("num_lattices"))
        spec = BoundSpec(Case.parse(str(d["case"])), float(d.get("failure_prob", 0.5)), ctx)
        return cls(
            spec=spec,
            num_trials=int(d["num_trials"]),
            master_seed=int(d.get("master_seed", 0)),
            record_boxes=bool(d.get("record_boxes", False)),
            output_path=d.get("output_path"),
        )


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    generators: tuple[int, ...]
    grid_max: float
    upper_bound: float
    bound_value: float
    violated: bool
    argmax_numerators: tuple[int, ...] | None = None

    def csv_row(self) -> list[str]:
        return [
            str(self.trial_index),
            " ".join(map(str, self.generators)),
            repr(self.grid_max),
            repr(self.upper_bound),
            repr(self.bound_value),
            "true" if self.violated else "false",
        ]


@dataclass(frozen=True)
class CampaignSummary:
    num_trials: int
    num_violations: int
    empirical_quantiles: list[tuple[float, float]]
    mean_grid_max: float
    std_grid_max: float
    bound_value: float
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "num_trials": self.num_trials,
            "num_violations": self.num_violations,
            "upper_bound_quantiles": [[q, v] for q, v in self.empirical_quantiles],
            "grid_max_mean": self.mean_grid_max,
            "grid_max_std": self.std_grid_max,
            "bound": self.bound_value,
            "config": self.config,
        }


def run_trial(config: CampaignConfig, trial_index: int) -> TrialRecord:
    spec = config.spec
    rng = make_rng(config.master_seed, trial_index)
    cons = draw_construction(spec.ctx, spec.case.generator_mode, spec.case.shift_mode, rng)
    report = star_disc_grid(cons.build(), spec.ctx)
    bound = theorem_bound(spec).final_bound
    return TrialRecord(
        trial_index=trial_index,
        generators=cons.generators,
        grid_max=report.grid_max,
        upper_bound=report.upper_bound,
        bound_value=bound,
        violated=report.upper_bound > bound,
        argmax_numerators=report.argmax_box.grid_numerators if config.record_boxes else None,
    )


def summarize(records, config: CampaignConfig | None = None) -> CampaignSummary:
    records = sorted(records, key=lambda r: r.trial_index)
    # stats over sorted values so trial order cannot change the floats
    ub = np.sort(np.array([r.upper_bound for r in records]))
    gm = np.sort(np.array([r.grid_max for r in records]))
    return CampaignSummary(
        num_trials=len(records),
        num_violations=sum(r.violated for r in records),
        empirical_quantiles=[(q, float(np.quantile(ub, q))) for q in QUANTILES],
        mean_grid_max=float(np.mean(gm)),
        std_grid_max=float(np.std(gm, ddof=1)) if len(gm) > 1 else 0.0,
        bound_value=records[0].bound_value,
        config=config.to_dict() if config is not None else {},
    )


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in sorted(records, key=lambda r: r.trial_index):
        w.writerow(r.csv_row())
    return buf.getvalue()


def _run_chunk(args):
    config, indices = args
    return [run_trial(config, i) for i in indices]


def run_campaign(config: CampaignConfig, workers: int | None = 1) -> tuple[CampaignSummary, list[TrialRecord]]:
    """Run every trial, summarise, and persist when ``output_path`` is set.

    ``output_path`` names a directory receiving ``trials.csv`` and
    ``summary.json``.
    """
    indices = list(range(config.num_trials))
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and config.num_trials > 1:
        chunks = [indices[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = [r for part in ex.map(_run_chunk, [(config, c) for c in chunks]) for r in part]
    else:
        records = [run_trial(config, i) for i in indices]
    records.sort(key=lambda r: r.trial_index)
    summary = summarize(records, config)
    if config.output_path is not None:
        out = Path(config.output_path)
        out.mkdir(parents=True, exist_ok=True)
        (out / "trials.csv").write_text(records_to_csv(records))
        (out / "summary.json").write_text(json.dumps(summary.to_dict(), indent=2) + "\n")
    return summary, records


# --- shift lemmas --------------------------------------------------------


def all_grid_shifts(ctx: PrimeContext, cap: int = SHIFT_CAP) -> np.ndarray:
    """Every grid shift as numerators, shape (N^s, s)."""
    check_capacity("grid shift enumeration", ctx.n_prime**ctx.dim, cap)
    grids = np.indices((ctx.n_prime,) * ctx.dim).reshape(ctx.dim, -1)
    return grids.T.astype(np.int64)


def _check_grid_box(b: Box, ctx: PrimeContext):
    if not b.is_grid or b.n_prime != ctx.n_prime or b.dim != ctx.dim:
        raise ValueError("expected a grid box with the context's N and s")


def _shifted_counts(z: int, b: Box, ctx: PrimeContext, cap: int) -> np.ndarray:
    """#points of P_N(z) + delta inside [0, b), for every grid shift delta."""
    lattice = generate_korobov(z, ctx).points
    shifts = all_grid_shifts(ctx, cap)
    check_capacity("shift x point evaluation", len(shifts) * ctx.n_prime, cap)
    moved = (lattice[None, :, :] + shifts[:, None, :]) % ctx.n_prime
    inside = np.all(moved < np.asarray(b.grid_numerators), axis=2)
    return inside.sum(axis=1)


def verify_mean_zero_discrete(z: int, b: Box, ctx: PrimeContext, cap: int = SHIFT_CAP) -> Fraction:
    """Average of disc(P_N(z) + delta, [0, b)) over all N^s grid shifts, exactly."""
    _check_grid_box(b, ctx)
    counts = _shifted_counts(z, b, ctx, cap)
    total = int(counts.sum())
    return Fraction(total, ctx.n_prime * len(counts)) - b.volume_exact()


def _lattice_coords(z, ctx):
    return generate_korobov(z, ctx).coords()


def _continuous_discs(coords, b: Box, deltas):
    moved = frac(coords[None, :, :] + deltas[:, None, :])
    inside = np.all(moved < np.asarray(b.corner), axis=2)
    vol = math.prod(b.corner)
    return inside.sum(axis=1) / coords.shape[0] - vol


def verify_mean_zero_continuous(z: int, b: Box, ctx: PrimeContext, num_samples: int, seed: int):
    """Monte Carlo mean and standard error of disc(P_N(z) + Delta, [0, b))."""
    if num_samples < 2:
        raise ValueError("need at least two samples")
    rng = make_rng(seed)
    deltas = rng.random((num_samples, ctx.dim))
    d = _continuous_discs(_lattice_coords(z, ctx), b, deltas)
    return float(np.mean(d)), float(np.std(d, ddof=1) / math.sqrt(num_samples))


def variance_lemma_cap(case: Case, ctx: PrimeContext) -> float:
    """Per-lattice second-moment cap (random cases) or summed cap (fixed cases)."""
    case = Case.parse(case) if isinstance(case, str) else case
    s, n, m = ctx.dim, ctx.n_prime, ctx.num_lattices
    return {
        Case.RANDOM_CONTINUOUS: s / m + s / (3 * n * n),
        Case.RANDOM_DISCRETE: s / m,
        Case.FIXED_CONTINUOUS: s * (1 + 1 / (3 * n)),
        Case.FIXED_DISCRETE: float(s),
    }[case]


def estimate_variance(case: Case, b: Box, ctx: PrimeContext, num_samples: int, seed: int):
    """Monte Carlo second moment of the local discrepancy and its standard error.

    Random-generator cases estimate E_{z, shift}[disc^2] for one lattice.
    Fixed-generator cases estimate sum_{r=1}^M E_shift[disc^2(P_N(r) + shift)],
    spending ``num_samples`` shifts on every r.
    """
    case = Case.parse(case) if isinstance(case, str) else case
    if num_samples < 2:
        raise ValueError("need at least two samples")
    rng = make_rng(seed)
    m, n_prime, s = ctx.num_lattices, ctx.n_prime, ctx.dim
    a_all = korobov_matrix(np.arange(1, m + 1), ctx)
    n = np.arange(n_prime, dtype=np.int64)

    def draw_discs(a_rows):
        # a_rows: (S, s) generating vectors, one lattice per sample
        if case.continuous:
            deltas = rng.random((len(a_rows), s))
            coords = (n[None, :, None] * a_rows[:, None, :] % n_prime) / n_prime
            moved = frac(coords + deltas[:, None, :])
            inside = np.all(moved < np.asarray(b.corner), axis=2)
            return inside.sum(axis=1) / n_prime - math.prod(b.corner)
        _check_grid_box(b, ctx)
        deltas = rng.integers(0, n_prime, size=(len(a_rows), s))
        moved = (n[None, :, None] * a_rows[:, None, :] + deltas[:, None, :]) % n_prime
        inside = np.all(moved < np.asarray(b.grid_numerators), axis=2)
        vol = math.prod(b.grid_numerators)
        return (inside.sum(axis=1) * n_prime**s - n_prime * vol) / n_prime ** (s + 1)

    if case.generator_mode == "random":
        zs = rng.integers(1, m + 1, size=num_samples)
        sq = draw_discs(a_all[zs - 1]) ** 2
        return float(np.mean(sq)), float(np.std(sq, ddof=1) / math.sqrt(num_samples))
    total, var = 0.0, 0.0
    for r in range(m):
        sq = draw_discs(np.repeat(a_all[r : r + 1], num_samples, axis=0)) ** 2
        total += float(np.mean(sq))
        var += float(np.var(sq, ddof=1)) / num_samples
    return total, math.sqrt(var)


def _circle_overlap(b: float, d: np.ndarray) -> np.ndarray:
    """Length of [0, b) intersected with [0, b) + d on the circle, d in [0, 1)."""
    return np.maximum(0.0, b - d) + np.maximum(0.0, b + d - 1.0)


def continuous_second_moment(z: int, b: Box, ctx: PrimeContext) -> float:
    """E_Delta[disc^2(P_N(z) + Delta, [0, b))] for uniform Delta, in closed form.

    Uses the pair-overlap expansion: the probability that two lattice points
    both land in the box is the overlap volume of the box and its translate,
    and lattice differences are again lattice points.
    """
    coords = _lattice_coords(z, ctx)
    overlap = np.ones(ctx.n_prime)
    for j, bj in enumerate(b.corner):
        overlap *= _circle_overlap(bj, coords[:, j])
    lam = math.prod(b.corner)
    return max(float(np.mean(overlap)) - lam * lam, 0.0)


@dataclass(frozen=True)
class VarianceCheck:
    exhaustive: float
    spectral: float | None
    cap: float
    exact: Fraction | None = None

    @property
    def ok(self) -> bool:
        vals = [self.exhaustive] + ([self.spectral] if self.spectral is not None else [])
        return all(v < self.cap for v in vals)


def discrete_second_moment_exact(z: int, b: Box, ctx: PrimeContext, cap: int = SHIFT_CAP) -> Fraction:
    """E_delta[disc^2(P_N(z) + delta, [0, b))] over all grid shifts, as a rational."""
    _check_grid_box(b, ctx)
    counts = _shifted_counts(z, b, ctx, cap)
    n_prime, s = ctx.n_prime, ctx.dim
    vol_num = math.prod(b.grid_numerators)
    numer = [int(c) * n_prime**s - n_prime * vol_num for c in counts]
    return Fraction(sum(v * v for v in numer), len(counts) * n_prime ** (2 * s + 2))


def spectral_sum_variance(b: Box, ctx: PrimeContext) -> float:
    """sum_{k != 0} |C_k(b)|^2 * #{r <= M : k . a(r) = 0 mod N}."""
    _check_grid_box(b, ctx)
    hits = all_hit_counts(ctx).astype(np.float64)
    table = np.abs(disc_coeff_table(b)) ** 2
    weight = table[0]
    for row in table[1:]:
        weight = np.multiply.outer(weight, row)
    hits.flat[0] = 0.0
    return float(np.sum(weight * hits))


def sum_variance_fixed(case: Case, b: Box, ctx: PrimeContext, cap: int = SHIFT_CAP) -> VarianceCheck:
    """Sum over r = 1..M of the shift-averaged squared discrepancy of P_N(r).

    Discrete shifts: exhaustive rational average over every grid shift, with
    the Fourier-side expression as an independent cross-check.  Continuous
    shifts: closed-form pair-overlap expression; no spectral value.
    """
    case = Case.parse(case) if isinstance(case, str) else case
    m = ctx.num_lattices
    if case.continuous:
        total = sum(continuous_second_moment(r, b, ctx) for r in range(1, m + 1))
        return VarianceCheck(total, None, variance_lemma_cap(Case.FIXED_CONTINUOUS, ctx))
    exact = sum((discrete_second_moment_exact(r, b, ctx, cap) for r in range(1, m + 1)), Fraction(0))
    return VarianceCheck(
        float(exact), spectral_sum_variance(b, ctx), variance_lemma_cap(Case.FIXED_DISCRETE, ctx), exact
    )
