"""Closed-form probabilistic discrepancy bounds for the four union constructions.

All logarithms are natural.  ``failure_prob`` is the probability mass the
union bound leaves for the bad event; the bound holds with probability at
least ``1 - failure_prob``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass

from .modmath import PrimeContext


class Case(str, enum.Enum):
    RANDOM_CONTINUOUS = "random-continuous"
    FIXED_CONTINUOUS = "fixed-continuous"
    RANDOM_DISCRETE = "random-discrete"
    FIXED_DISCRETE = "fixed-discrete"

    @property
    def continuous(self) -> bool:
        return self in (Case.RANDOM_CONTINUOUS, Case.FIXED_CONTINUOUS)

    @property
    def generator_mode(self) -> str:
        return self.value.split("-")[0]

    @property
    def shift_mode(self) -> str:
        return self.value.split("-")[1]

    @classmethod
    def parse(cls, text: str) -> "Case":
        key = text.strip().lower().replace("_", "-")
        aliases = {"1": cls.RANDOM_CONTINUOUS, "2": cls.FIXED_CONTINUOUS,
                   "3": cls.RANDOM_DISCRETE, "4": cls.FIXED_DISCRETE}
        if key in aliases:
            return aliases[key]
        return cls(key)


# the factor multiplying the log term in the published statements
ROUNDED_CONSTANT = {True: 1.83, False: 1.73}


@dataclass(frozen=True)
class BoundSpec:
    case: Case
    failure_prob: float
    ctx: PrimeContext

    def __post_init__(self):
        if not 0.0 < self.failure_prob < 1.0:
            raise ValueError(f"failure_prob must lie in (0, 1), got {self.failure_prob}")
        object.__setattr__(self, "case", Case.parse(self.case) if isinstance(self.case, str) else self.case)


@dataclass(frozen=True)
class BoundBreakdown:
    variance_cap: float
    log_term: float
    t_zero: float
    pipeline_bound: float  # t0 / M + s / N, the unrounded chain
    final_bound: float
    constant: float
    rounded_constant: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def variance_cap(case: Case, ctx: PrimeContext) -> float:
    """Cap on Var(sum of the M per-lattice discrepancies)."""
    case = Case.parse(case) if isinstance(case, str) else case
    if case.continuous:
        return ctx.dim * (1.0 + 1.0 / (3.0 * ctx.n_prime))
    return float(ctx.dim)


def log_term(ctx: PrimeContext, failure_prob: float) -> float:
    """L = s log(N+1) + log 2 + log(1/failure_prob)."""
    if not 0.0 < failure_prob < 1.0:
        raise ValueError(f"failure_prob must lie in (0, 1), got {failure_prob}")
    return ctx.dim * math.log(ctx.n_prime + 1) + math.log(2.0) - math.log(failure_prob)


def t_zero(L: float, case: Case, ctx: PrimeContext) -> float:
    """Positive root of t^2 - (2L/3) t - 2 v L = 0 with v the variance cap."""
    if L <= 0:
        raise ValueError("L must be positive")
    v = variance_cap(case, ctx)
    return L / 3.0 * (1.0 + math.sqrt(1.0 + 18.0 * v / L))


def universal_constant(case: Case) -> float:
    """(1/3)(1 + sqrt(1 + 18 c / log 3)) with c = 7/6 (continuous) or 1 (discrete)."""
    case = Case.parse(case) if isinstance(case, str) else case
    c = 7.0 / 6.0 if case.continuous else 1.0
    return (1.0 + math.sqrt(1.0 + 18.0 * c / math.log(3.0))) / 3.0


def bernstein_tail(t: float, variance: float, bound_one: float = 1.0) -> float:
    """Two-sided Bernstein bound 2 exp(-t^2 / (2 variance + 2 bound_one t / 3))."""
    if t <= 0:
        raise ValueError("t must be positive")
    if variance < 0:
        raise ValueError("variance must be non-negative")
    return 2.0 * math.exp(-t * t / (2.0 * variance + 2.0 * bound_one * t / 3.0))


def theorem_bound(spec: BoundSpec) -> BoundBreakdown:
    ctx, case = spec.ctx, spec.case
    L = log_term(ctx, spec.failure_prob)
    t0 = t_zero(L, case, ctx)
    rounded = ROUNDED_CONSTANT[case.continuous]
    return BoundBreakdown(
        variance_cap=variance_cap(case, ctx),
        log_term=L,
        t_zero=t0,
        pipeline_bound=t0 / ctx.num_lattices + ctx.dim / ctx.n_prime,
        final_bound=rounded * L / ctx.num_lattices,
        constant=universal_constant(case),
        rounded_constant=rounded,
    )
