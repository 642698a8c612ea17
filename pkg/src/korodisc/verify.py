"""Exhaustive and Monte Carlo checks grouped by lemma family.

Each suite returns a list of :class:`Check` rows; a suite passes when every
row passes.  Failing rows carry the (k, b, z) witness in ``detail``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bounds import Case
from .box import grid_boxes
from .charsum import all_hit_counts, char_sum, char_sum_oracle
from .experiments import (
    estimate_variance,
    sum_variance_fixed,
    variance_lemma_cap,
    verify_mean_zero_continuous,
    verify_mean_zero_discrete,
)
from .fourier import parseval_discrete_residual
from .modmath import PrimeContext

PARSEVAL_TOL = 1e-10
ORACLE_TOL = 1e-10
SPECTRAL_TOL = 1e-10
SUITES = ("parseval", "charsum", "meanzero", "variance")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    limit: float
    detail: str = ""


def suite_parseval(ctx: PrimeContext, **_) -> list[Check]:
    worst, witness = 0.0, None
    for b in grid_boxes(ctx.n_prime, ctx.dim):
        r = parseval_discrete_residual(b)
        if r > worst:
            worst, witness = r, b.grid_numerators
    return [Check("parseval residual, all grid boxes", worst <= PARSEVAL_TOL, worst,
                  PARSEVAL_TOL, f"b={witness}" if witness else "")]


def suite_charsum(ctx: PrimeContext, oracle: bool = True, **_) -> list[Check]:
    hits = all_hit_counts(ctx)
    hits_nz = hits.copy()
    hits_nz.flat[0] = 0
    worst = int(hits_nz.max())
    k_star = tuple(int(i) for i in np.unravel_index(int(np.argmax(hits_nz)), hits.shape))
    rows = [Check("generator hits <= s-1, all k != 0", worst <= ctx.dim - 1, worst,
                  ctx.dim - 1, f"k={k_star}")]
    if oracle:
        err, witness = 0.0, ""
        for k in itertools.product(range(ctx.n_prime), repeat=ctx.dim):
            for z in range(1, ctx.num_lattices + 1):
                e = abs(char_sum_oracle(z, k, ctx) - char_sum(z, k, ctx).value)
                if e > err:
                    err, witness = e, f"k={k} z={z}"
        rows.append(Check("indicator vs exponential sum", err <= ORACLE_TOL, err, ORACLE_TOL, witness))
    return rows


def suite_meanzero(ctx: PrimeContext, num_samples: int = 10_000, seed: int = 0, **_) -> list[Check]:
    nonzero = [(z, b.grid_numerators) for z in range(1, ctx.n_prime)
               for b in grid_boxes(ctx.n_prime, ctx.dim)
               if verify_mean_zero_discrete(z, b, ctx) != 0]
    rows = [Check("discrete shift mean is exactly 0", not nonzero, float(len(nonzero)), 0.0,
                  f"(z, b)={nonzero[0]}" if nonzero else "")]
    worst, witness = 0.0, ""
    for i, b in enumerate(grid_boxes(ctx.n_prime, ctx.dim)):
        for z in (1, ctx.n_prime - 1):
            mean, se = verify_mean_zero_continuous(z, b, ctx, num_samples, seed + i)
            ratio = abs(mean) / se if se > 0 else (0.0 if mean == 0 else np.inf)
            if ratio > worst:
                worst, witness = ratio, f"z={z} b={b.grid_numerators}"
    rows.append(Check("continuous shift |mean| / stderr", worst <= 4.0, worst, 4.0, witness))
    return rows


def suite_variance(ctx: PrimeContext, num_samples: int = 10_000, seed: int = 0, **_) -> list[Check]:
    rows = []
    boxes = list(grid_boxes(ctx.n_prime, ctx.dim))
    worst_gap, worst_val, witness = 0.0, 0.0, ""
    for b in boxes:
        chk = sum_variance_fixed(Case.FIXED_DISCRETE, b, ctx)
        gap = abs(chk.exhaustive - chk.spectral)
        worst_gap = max(worst_gap, gap)
        if chk.exhaustive >= worst_val:
            worst_val, witness = chk.exhaustive, f"b={b.grid_numerators}"
    rows.append(Check("fixed/discrete: exhaustive vs spectral", worst_gap <= SPECTRAL_TOL,
                      worst_gap, SPECTRAL_TOL))
    rows.append(Check("fixed/discrete: summed second moment < s", worst_val < ctx.dim,
                      worst_val, float(ctx.dim), witness))
    worst_fc = max(sum_variance_fixed(Case.FIXED_CONTINUOUS, b, ctx).exhaustive for b in boxes)
    cap_fc = variance_lemma_cap(Case.FIXED_CONTINUOUS, ctx)
    rows.append(Check("fixed/continuous: summed second moment < cap", worst_fc < cap_fc, worst_fc, cap_fc))
    for case in (Case.RANDOM_DISCRETE, Case.RANDOM_CONTINUOUS):
        cap = variance_lemma_cap(case, ctx)
        worst, witness = -np.inf, ""
        for i, b in enumerate(boxes):
            est, se = estimate_variance(case, b, ctx, num_samples, seed + i)
            excess = est - (cap + 3 * se)
            if excess > worst:
                worst, witness = excess, f"b={b.grid_numerators}"
        rows.append(Check(f"{case.value}: MC second moment <= cap + 3 se", worst <= 0,
                          worst, 0.0, witness))
    return rows


def run_suite(name: str, ctx: PrimeContext, **kw) -> list[Check]:
    fn = {"parseval": suite_parseval, "charsum": suite_charsum,
          "meanzero": suite_meanzero, "variance": suite_variance}.get(name)
    if fn is None:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    return fn(ctx, **kw)
