import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from halfnorm_stein.normal import (HALF_NORMAL, HALF_NORMAL_MEAN,
                                   INV_SQRT_2PI, cap_phi, inv_cap_phi,
                                   mill_bounds, normal_sf, phi)


def test_phi_at_zero():
    assert phi(0.0) == pytest.approx(INV_SQRT_2PI, abs=0.0)
    assert phi(0.0) == pytest.approx(0.3989422804014327, rel=1e-15)


def test_phi_at_one():
    # exp(-1/2)/sqrt(2 pi), high-precision reference
    assert phi(1.0) == pytest.approx(0.24197072451914337, rel=1e-14)


@given(st.floats(-30.0, 30.0))
def test_phi_even(x):
    assert phi(x) == phi(-x)
    assert phi(x) > 0.0


def test_cap_phi_values():
    assert cap_phi(0.0) == 0.5
    assert cap_phi(5.0) == pytest.approx(0.9999997133484281, rel=1e-14)
    assert cap_phi(inv_cap_phi(0.75)) == pytest.approx(0.75, abs=1e-15)


@given(st.floats(-8.0, 8.0))
def test_cap_phi_reflection(x):
    assert cap_phi(-x) == pytest.approx(1.0 - cap_phi(x), abs=1e-15)


@given(st.floats(-8.0, 4.0))
def test_inv_cap_phi_roundtrip(x):
    # above x ~ 4.4 the rounding of cap_phi(x) itself moves the true
    # inverse by more than 1e-12, so the x-space roundtrip is only
    # meaningful on this range; the p-space residual below covers the rest
    assert inv_cap_phi(cap_phi(x)) == pytest.approx(x, abs=1e-12)


@given(st.floats(4.0, 8.0))
def test_inv_cap_phi_upper_tail_residual(x):
    p = cap_phi(x)
    assert abs(cap_phi(inv_cap_phi(p)) - p) < 1e-14


def test_inv_cap_phi_known_values():
    assert inv_cap_phi(0.5) == pytest.approx(0.0, abs=1e-15)
    assert inv_cap_phi(0.75) == pytest.approx(0.6744897501960817, abs=1e-13)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
def test_inv_cap_phi_domain(p):
    with pytest.raises(ValueError):
        inv_cap_phi(p)


def test_inv_cap_phi_residual_small():
    ps = np.linspace(1e-12, 1.0 - 1e-12, 2001)
    assert np.max(np.abs(cap_phi(inv_cap_phi(ps)) - ps)) < 1e-14


def test_mill_bounds_at_one():
    lower, upper = mill_bounds(1.0)
    assert lower == pytest.approx(0.120985, abs=1e-6)
    assert upper == pytest.approx(0.241970, abs=1e-6)
    assert lower < normal_sf(1.0) < upper


def test_mill_bounds_tight_in_tail():
    lower, upper = mill_bounds(10.0)
    tail = normal_sf(10.0)
    assert (upper - lower) / tail < 2e-2
    assert lower <= tail <= upper


def test_mill_bounds_grid():
    xs = np.linspace(1e-3, 10.0, 10_000)
    lower, upper = mill_bounds(xs)
    tail = normal_sf(xs)
    assert np.all(lower < tail)
    assert np.all(tail < upper)


def test_mill_bounds_domain():
    with pytest.raises(ValueError):
        mill_bounds(0.0)


def test_half_normal_pdf_cdf():
    xs = np.linspace(0.01, 8.0, 500)
    assert np.max(np.abs(HALF_NORMAL.cdf(xs) - (2.0 * cap_phi(xs) - 1.0))) < 1e-15
    assert HALF_NORMAL.pdf(-1.0) == 0.0
    assert HALF_NORMAL.cdf(-1.0) == 0.0
    assert HALF_NORMAL.cdf(0.0) == 0.0
    assert HALF_NORMAL.cdf(HALF_NORMAL.median) == pytest.approx(0.5, abs=1e-12)


def test_half_normal_pdf_is_cdf_derivative():
    step = 1e-5
    for x in np.linspace(0.01, 6.0, 200):
        num = (HALF_NORMAL.cdf(x + step) - HALF_NORMAL.cdf(x - step)) / (2 * step)
        assert num == pytest.approx(HALF_NORMAL.pdf(x), abs=1e-6)


def test_half_normal_mean_quadrature():
    val, _ = integrate.quad(lambda x: x * HALF_NORMAL.pdf(x), 0.0, np.inf)
    assert abs(val - HALF_NORMAL_MEAN) < 1e-10
    assert HALF_NORMAL_MEAN == pytest.approx(math.sqrt(2.0 / math.pi), abs=0.0)


def test_half_normal_ppf_roundtrip():
    qs = np.linspace(1e-6, 1.0 - 1e-9, 400)
    xs = HALF_NORMAL.ppf(qs)
    assert np.max(np.abs(HALF_NORMAL.cdf(xs) - qs)) < 1e-12
    with pytest.raises(ValueError):
        HALF_NORMAL.ppf(1.0)


def test_half_normal_log_derivative():
    assert HALF_NORMAL.log_derivative(2.5) == -2.5
    with pytest.raises(ValueError):
        HALF_NORMAL.log_derivative(-0.5)


def test_half_normal_sf_tail_accuracy():
    # relative accuracy far in the tail, where 1 - cdf would lose everything
    x = 8.0
    assert HALF_NORMAL.sf(x) == pytest.approx(2.0 * normal_sf(x), rel=1e-14)
    assert HALF_NORMAL.sf(x) > 0.0
