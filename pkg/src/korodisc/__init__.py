"""Shifted Korobov lattice unions modulo a prime and their star discrepancy."""

from .bounds import (
    BoundBreakdown,
    BoundSpec,
    Case,
    bernstein_tail,
    log_term,
    t_zero,
    theorem_bound,
    universal_constant,
    variance_cap,
)
from .box import Box, grid_boxes, volume
from .charsum import (
    CharSumResult,
    char_sum,
    char_sum_oracle,
    count_generator_hits,
    expected_sq_char_sum,
)
from .discrepancy import (
    DiscrepancyReport,
    local_disc,
    local_disc_exact,
    star_disc_exact,
    star_disc_grid,
)
from .errors import CapacityError
from .fourier import (
    cont_coeff,
    cont_coeff_1d,
    disc_coeff,
    disc_coeff_1d,
    parseval_continuous_truncated,
    parseval_discrete_residual,
    remainder_term,
)
from .modmath import GeneratorVector, PrimeContext, is_prime, korobov_vector
from .pointset import (
    PointSet,
    generate_korobov,
    multiset_union,
    sample_construction,
    shift_continuous,
    shift_discrete,
)

__version__ = "0.1.0"
