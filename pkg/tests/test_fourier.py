import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from korodisc.box import Box, grid_boxes, volume
from korodisc.errors import CapacityError
from korodisc.fourier import (
    cont_coeff,
    cont_coeff_1d,
    continuous_tail_bound,
    disc_coeff,
    disc_coeff_1d,
    disc_coeff_table,
    parseval_continuous_truncated,
    parseval_discrete_residual,
    remainder_cap,
    remainder_tail_bound,
    remainder_term,
)

from oracles import geometric_disc_coeff, quadrature_cont_coeff


def test_cont_coeff_1d_examples():
    assert cont_coeff_1d(0, 0.4) == 0.4
    assert abs(cont_coeff_1d(3, 1.0)) < 1e-15
    assert cmath.isclose(cont_coeff_1d(1, 0.5), -1j / math.pi, abs_tol=1e-15)
    with pytest.raises(ValueError):
        cont_coeff_1d(1, 1.5)


@pytest.mark.parametrize("k", [-3, -1, 1, 2, 7])
@pytest.mark.parametrize("b", [0.0, 0.13, 0.5, 0.77, 1.0])
def test_cont_coeff_1d_matches_quadrature(k, b):
    assert abs(cont_coeff_1d(k, b) - quadrature_cont_coeff(k, b)) < 1e-10


@given(st.integers(-50, 50).filter(bool), st.floats(0, 1))
def test_cont_coeff_modulus_bound(k, b):
    assert abs(cont_coeff_1d(k, b)) <= min(b, 1 / (math.pi * abs(k))) + 1e-15


def test_cont_coeff_products():
    b = Box((0.3, 0.6, 0.9))
    assert cont_coeff((0, 0, 0), b) == pytest.approx(0.3 * 0.6 * 0.9)
    assert cont_coeff((2, -1, 0), Box((0.0, 0.5, 0.5))) == 0
    assert cmath.isclose(cont_coeff((1, 0), Box((0.5, 0.5))), -0.5j / math.pi, abs_tol=1e-15)
    with pytest.raises(ValueError):
        cont_coeff((1,), b)


def test_disc_coeff_1d_examples():
    assert disc_coeff_1d(0, 2, 5) == pytest.approx(0.4)
    assert abs(disc_coeff_1d(2, 5, 5)) < 1e-15
    expected = (1 + cmath.exp(-2j * math.pi / 5)) / 5  # (1/5)(e^0 + e^{-2 pi i/5})
    assert abs(disc_coeff_1d(1, 2, 5) - expected) < 1e-15
    assert abs(disc_coeff_1d(1, 1, 3) - 1 / 3) < 1e-15
    for bad in [(-1, 0, 5), (5, 0, 5), (1, 6, 5)]:
        with pytest.raises(ValueError):
            disc_coeff_1d(*bad)


@pytest.mark.parametrize("n", [2, 3, 5, 7, 11, 13])
def test_disc_coeff_1d_matches_geometric_sum(n):
    for k in range(n):
        for m in range(n + 1):
            assert abs(disc_coeff_1d(k, m, n) - geometric_disc_coeff(k, m, n)) < 1e-12


def test_disc_coeff_table_agrees_with_scalar():
    b = Box.grid((2, 5, 7), 7)
    table = disc_coeff_table(b)
    for j, m in enumerate(b.grid_numerators):
        for k in range(7):
            assert abs(table[j, k] - disc_coeff_1d(k, m, 7)) < 1e-15


def test_disc_coeff_products():
    assert disc_coeff((0, 0), Box.grid((3, 5), 7)) == pytest.approx(15 / 49)
    for k in itertools.product(range(5), repeat=2):
        if any(k):
            assert abs(disc_coeff(k, Box.grid((5, 5), 5))) < 1e-14
    with pytest.raises(ValueError):
        disc_coeff((1,), Box((0.5,)))


@pytest.mark.parametrize("n, s", [(2, 2), (3, 2), (5, 1), (7, 2)])
def test_inverse_transform_reconstructs_indicator(n, s):
    ks = np.array(list(itertools.product(range(n), repeat=s)))
    xs = np.array(list(itertools.product(range(n), repeat=s)))
    phase = np.exp(2j * np.pi * (xs @ ks.T) / n)  # (x, k)
    for b in grid_boxes(n, s):
        coeffs = np.array([disc_coeff(k, b) for k in ks])
        recon = phase @ coeffs
        want = np.all(xs < np.array(b.grid_numerators), axis=1).astype(float)
        assert np.max(np.abs(recon - want)) < 1e-10


def test_parseval_discrete_examples():
    for nums in [(0, 0), (0, 5), (5, 5), (5, 0)]:
        assert parseval_discrete_residual(Box.grid(nums, 5)) <= 1e-12
    assert parseval_discrete_residual(Box.grid((2,), 5)) <= 1e-12
    direct = sum(abs(geometric_disc_coeff(k, 2, 5)) ** 2 for k in range(1, 5))
    assert abs(direct - 0.24) < 1e-12
    assert parseval_discrete_residual(Box.grid((3, 5), 7)) <= 1e-12


@pytest.mark.parametrize("n, s", [(2, 1), (3, 2), (5, 2), (7, 2)])
def test_parseval_discrete_exhaustive(n, s):
    assert max(parseval_discrete_residual(b) for b in grid_boxes(n, s)) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([11, 13, 17, 19, 23, 29, 31]), st.integers(1, 3), st.data())
def test_parseval_discrete_random_boxes(n, s, data):
    nums = data.draw(st.lists(st.integers(0, n), min_size=s, max_size=s))
    assert parseval_discrete_residual(Box.grid(nums, n)) <= 1e-10


def test_parseval_discrete_cap():
    with pytest.raises(CapacityError):
        parseval_discrete_residual(Box.grid((1, 1, 1), 13), cap=1000)


def test_parseval_continuous_examples():
    for k in (1, 5, 50):
        assert parseval_continuous_truncated(Box((1.0, 1.0)), k) == pytest.approx(0, abs=1e-30)
    val = parseval_continuous_truncated(Box((0.5,)), 10_000)
    assert 0.25 - 1e-4 < val <= 0.25


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 1), st.integers(1, 400))
def test_parseval_continuous_sandwich(b, k):
    lam = b * (1 - b)
    val = parseval_continuous_truncated(Box((b,)), k)
    assert val <= lam + 1e-12
    assert val + continuous_tail_bound(1, k) >= lam - 1e-12


def test_parseval_continuous_monotone():
    b = Box((0.3, 0.8))
    vals = [parseval_continuous_truncated(b, k) for k in (1, 2, 4, 8, 16, 64)]
    assert all(u <= v + 1e-15 for u, v in zip(vals, vals[1:]))
    lam = volume(b)
    assert vals[-1] <= lam * (1 - lam)


def _alias_mass(b, n):
    """sum_{h != 0} |c_{N h}(b)|^2 = f (1 - f) / N^2 with f = frac(N b)."""
    f = (n * b) % 1.0
    return f * (1 - f) / n**2


@given(st.sampled_from([2, 3, 5, 7, 13]), st.floats(0, 1))
def test_remainder_one_dim_closed_form(n, b):
    h = 2000
    r = remainder_term(Box((b,)), n, h)
    exact = _alias_mass(b, n)
    assert r <= exact + 1e-15
    assert r + remainder_tail_bound(n, h) >= exact - 1e-15
    assert r <= 1 / (3 * n**2)


def test_remainder_examples():
    # grid corners alias to zero: c_{Nh}(m/N) = 0 for h != 0
    assert remainder_term(Box((0.4,)), 5, 10_000) < 1e-30
    assert remainder_term(Box((0.4,)), 5, 10_000) <= 1 / 75
    b = Box((0.31, 0.62, 0.93))
    assert remainder_term(b, 5, 5000) < remainder_cap(3, 5)


@settings(max_examples=50)
@given(st.sampled_from([3, 5, 7, 11]), st.data())
def test_remainder_below_cap_on_active_coordinates(n, data):
    s = data.draw(st.integers(1, 4))
    corner = data.draw(st.lists(st.floats(0, 1 - 1 / n), min_size=s, max_size=s))
    h = 500
    r = remainder_term(Box(tuple(corner)), n, h)
    exact = math.prod(c * c + _alias_mass(c, n) for c in corner) - math.prod(c * c for c in corner)
    assert r <= exact + 1e-14
    assert exact < remainder_cap(s, n)
