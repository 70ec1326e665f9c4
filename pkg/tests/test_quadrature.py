import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mie_nd.errors import DomainError
from mie_nd.model import Channel, make_params
from mie_nd.quadrature import (
    expect_power,
    gauss_laguerre,
    integrate_power_exp,
    kinetic_expectation,
    norm,
    potential_expectation,
    radial_inner_product,
)
from mie_nd.wavefunction import radial_state


@pytest.mark.parametrize("alpha, order", [(0.0, 5), (1.5, 20), (4.2, 64)])
def test_nodes_against_mpmath_roots(alpha, order):
    rule = gauss_laguerre(alpha, order)
    with mpmath.workdps(200):
        for x in rule.nodes[[0, order // 2, -1]]:
            # large-degree polynomial values are huge, so skip mpmath's residual check
            root = mpmath.findroot(lambda t: mpmath.laguerre(order, alpha, t), mpmath.mpf(x), verify=False)
            assert x == pytest.approx(float(root), rel=1e-13)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 3.0])
def test_weights_sum_to_gamma(alpha):
    rule = gauss_laguerre(alpha, 40)
    assert rule.weights.sum() == pytest.approx(math.gamma(alpha + 1), rel=1e-13)


@given(alpha=st.floats(-0.9, 10), k=st.integers(0, 30))
@settings(max_examples=50, deadline=None)
def test_moments_are_exact(alpha, k):
    rule = gauss_laguerre(alpha, 32)
    expected = math.exp(math.lgamma(alpha + k + 1))
    assert rule.integrate(lambda x: x**k) == pytest.approx(expected, rel=1e-11)


def test_rule_is_cached_and_read_only():
    a = gauss_laguerre(1.0, 16)
    assert a is gauss_laguerre(1.0, 16)
    with pytest.raises(ValueError):
        a.nodes[0] = 0.0


@pytest.mark.parametrize("alpha, order", [(-1.0, 10), (0.0, 0), (0.0, 401)])
def test_rule_argument_checks(alpha, order):
    with pytest.raises(DomainError):
        gauss_laguerre(alpha, order)


def test_large_order_is_finite():
    rule = gauss_laguerre(2.0, 400)
    assert np.all(np.isfinite(rule.log_weights))
    assert np.all(np.diff(rule.nodes) > 0)


def test_divergent_integral_rejected():
    with pytest.raises(DomainError):
        integrate_power_exp(lambda r: np.ones_like(r), -1.0, 1.0)


@pytest.mark.parametrize("N", [2, 3, 4, 6, 8])
@pytest.mark.parametrize("ell", [0, 2, 4])
@pytest.mark.parametrize("n_r", [0, 3, 10])
def test_states_are_normalised(N, ell, n_r):
    p = make_params(1.3, 0.7, 0.2)
    assert norm(radial_state(p, Channel(N, ell, n_r))) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("N, ell", [(3, 0), (4, 1), (7, 2)])
def test_physical_states_are_orthogonal(N, ell):
    p = make_params(2.0, 1.0, 0.0)
    states = [radial_state(p, Channel(N, ell, n)) for n in range(6)]
    for i in range(6):
        for j in range(i + 1, 6):
            assert abs(radial_inner_product(states[i], states[j])) < 1e-8


def test_hydrogen_expectations(hydrogen):
    s = radial_state(hydrogen, Channel(3, 0, 0))
    assert expect_power(s, -1) == pytest.approx(1.0, rel=1e-12)
    assert expect_power(s, -2) == pytest.approx(2.0, rel=1e-12)
    assert expect_power(s, 1) == pytest.approx(1.5, rel=1e-12)
    assert potential_expectation(s) == pytest.approx(-1.0, rel=1e-12)
    assert kinetic_expectation(s) == pytest.approx(0.5, rel=1e-12)


def test_inner_product_checks(hydrogen):
    a = radial_state(hydrogen, Channel(3, 0, 0))
    b = radial_state(hydrogen, Channel(4, 0, 0))
    with pytest.raises(DomainError):
        radial_inner_product(a, b)
    with pytest.raises(DomainError):
        radial_inner_product(a, a, measure_exponent=0)
    with pytest.raises(DomainError):
        radial_inner_product(a, a, power=-3)
