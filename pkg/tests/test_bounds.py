import json
import math

import pytest
from hypothesis import given, strategies as st

from korodisc.bounds import (
    BoundSpec,
    Case,
    bernstein_tail,
    log_term,
    t_zero,
    theorem_bound,
    universal_constant,
    variance_cap,
)
from korodisc.modmath import PrimeContext

PRIMES = [p for p in range(2, 102) if all(p % d for d in range(2, p))]


def test_variance_cap_examples():
    ctx = PrimeContext(5, 2)
    assert variance_cap(Case.RANDOM_CONTINUOUS, ctx) == pytest.approx(2 * 16 / 15)
    assert variance_cap(Case.FIXED_DISCRETE, PrimeContext(5, 3)) == 3
    for n in (3, 7, 31):
        c = PrimeContext(n, 4)
        assert variance_cap("fixed-continuous", c) > variance_cap("fixed-discrete", c)


def test_log_term_examples():
    ctx = PrimeContext(5, 2)
    assert log_term(ctx, 0.5) == pytest.approx(2 * math.log(6) + 2 * math.log(2))
    assert log_term(ctx, 0.5) == pytest.approx(4.9698, abs=5e-5)
    assert log_term(ctx, 0.1) > log_term(ctx, 0.5) > log_term(ctx, 0.9)
    for bad in (0.0, 1.0, 1.5):
        with pytest.raises(ValueError):
            log_term(ctx, bad)


def test_t_zero_example():
    ctx = PrimeContext(5, 2)
    t0 = t_zero(4.9698, Case.RANDOM_CONTINUOUS, ctx)
    assert t0 == pytest.approx(6.550, abs=5e-4)


@given(st.sampled_from(PRIMES), st.integers(1, 10), st.floats(1e-6, 0.999),
       st.sampled_from(list(Case)))
def test_t_zero_solves_quadratic(n, s, fp, case):
    ctx = PrimeContext(n, s)
    L = log_term(ctx, fp)
    t0 = t_zero(L, case, ctx)
    v = variance_cap(case, ctx)
    assert abs(t0 * t0 - 2 * L * t0 / 3 - 2 * v * L) < 1e-9 * t0 * t0
    assert t_zero(L * 1.01, case, ctx) > t0


def test_universal_constants():
    assert universal_constant(Case.RANDOM_CONTINUOUS) == pytest.approx(1.8283, abs=5e-5)
    assert universal_constant(Case.FIXED_DISCRETE) == pytest.approx(1.7231, abs=5e-5)
    assert universal_constant("fixed-continuous") > universal_constant("random-discrete")


def test_theorem4_example():
    spec = BoundSpec(Case.FIXED_DISCRETE, 0.5, PrimeContext(31, 2, 30))
    bd = theorem_bound(spec)
    assert bd.final_bound == pytest.approx(1.73 * (2 * math.log(32) + 2 * math.log(2)) / 30)
    assert bd.final_bound == pytest.approx(0.4797, abs=5e-5)
    assert bd.rounded_constant == 1.73 and bd.variance_cap == 2
    assert json.loads(bd.to_json())["final_bound"] == bd.final_bound


def test_final_bound_scales_inverse_m():
    ctx_a, ctx_b = PrimeContext(31, 2, 30), PrimeContext(31, 2, 15)
    a = theorem_bound(BoundSpec(Case.FIXED_DISCRETE, 0.1, ctx_a)).final_bound
    b = theorem_bound(BoundSpec(Case.FIXED_DISCRETE, 0.1, ctx_b)).final_bound
    assert b == pytest.approx(2 * a)


def test_bound_spec_validation():
    with pytest.raises(ValueError):
        BoundSpec(Case.FIXED_DISCRETE, 1.5, PrimeContext(5, 2))
    assert BoundSpec("4", 0.5, PrimeContext(5, 2)).case is Case.FIXED_DISCRETE


def test_t0_over_m_below_rounded_bound_sweep():
    # t0 / M alone is what the proof chain compares with the rounded bound
    for n in PRIMES:
        for s in range(1, 11):
            for fp in (0.5, 0.1, 0.01):
                for case in Case:
                    bd = theorem_bound(BoundSpec(case, fp, PrimeContext(n, s)))
                    assert bd.t_zero / (n - 1) <= bd.final_bound
                    assert bd.t_zero <= bd.constant * bd.log_term * (1 + 1e-12)


def test_bernstein_tail_examples():
    assert bernstein_tail(1e-9, 2.0) == pytest.approx(2.0)
    val = bernstein_tail(6.550, 2 * 16 / 15)
    assert val == pytest.approx(2 * math.exp(-(6.550**2) / (2 * 32 / 15 + 2 * 6.550 / 3)))
    assert math.log(val / 2) == pytest.approx(-4.97, abs=5e-3)
    ts = [0.1, 1, 5, 20]
    assert all(bernstein_tail(a, 1.0) > bernstein_tail(b, 1.0) for a, b in zip(ts, ts[1:]))


@given(st.sampled_from(PRIMES), st.integers(1, 10), st.floats(1e-4, 0.99), st.sampled_from(list(Case)))
def test_bernstein_at_t0_gives_failure_mass(n, s, fp, case):
    ctx = PrimeContext(n, s)
    t0 = t_zero(log_term(ctx, fp), case, ctx)
    mass = (n + 1) ** s * bernstein_tail(t0, variance_cap(case, ctx))
    assert mass == pytest.approx(fp, rel=1e-9)
