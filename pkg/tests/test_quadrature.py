"""Quadrature engine against closed-form oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad as scipy_quad

from hardylab import (
    DivergentIntegralError,
    NonconvergenceError,
    integrate,
    integrate_log_weighted,
    integrate_power_endpoint,
    log_weight_integral,
    power_binomial_integral,
    power_integral,
)


def beta_complete(a: float, b: float) -> float:
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def power_antiderivative(p: float, a: float, b: float) -> float:
    if p == -1.0:
        return math.log(b / a)
    return (b ** (p + 1) - a ** (p + 1)) / (p + 1)


# Battery of power-law integrals: int_a^b t^p dt against the antiderivative.
POWER_CASES = [
    (p, a, b)
    for p in (-2.5, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 7.0)
    for a, b in ((0.1, 1.0), (0.5, 2.0))
]

# Singular-endpoint integrals int_0^(1-d) (1-r)^alpha r^m dr with hand
# antiderivatives (w = 1 - r expansions).
def shell_integral(alpha: float, m: int, delta: float) -> float:
    total = 0.0
    for k in range(m + 1):
        coef = math.comb(m, k) * (-1.0) ** k
        total += coef * power_antiderivative(alpha + k, delta, 1.0)
    return total


SINGULAR_CASES = [
    (-0.5, 0, 0.0), (-0.5, 1, 0.0), (-0.5, 2, 0.0), (0.5, 1, 0.0),
    (-1.5, 1, 1e-4), (-1.5, 2, 1e-4), (-0.5, 1, 1e-6), (-1.8, 2, 1e-5),
]

LOG_CASES = [(1.0, 1e-3), (1.5, 1e-3), (2.0, 1e-4), (3.0, 1e-2)]


@pytest.mark.parametrize("p,a,b", POWER_CASES)
def test_power_battery(p, a, b):
    res = integrate(lambda t: np.power(t, p), a, b, rel_tol=1e-12)
    expected = power_antiderivative(p, a, b)
    assert abs(res.value - expected) <= 1e-10 * abs(expected)
    assert res.error_estimate <= 1e-10 * abs(expected) + 1e-14


@pytest.mark.parametrize("alpha,m,delta", SINGULAR_CASES)
def test_singular_endpoint_battery(alpha, m, delta):
    expected = shell_integral(alpha, m, delta)
    res = integrate_power_endpoint(
        lambda r: np.power(r, m), alpha, "right", 0.0, 1.0 - delta, rel_tol=1e-12
    )
    assert abs(res.value - expected) <= 1e-10 * abs(expected)


@pytest.mark.parametrize("gamma,delta", LOG_CASES)
def test_log_weight_battery(gamma, delta):
    res = integrate_log_weighted(lambda t: np.ones_like(t), gamma, delta, 1.0)
    oracle = scipy_quad(
        lambda t: (1.0 - math.log(t)) ** (-gamma) / t, delta, 1.0, epsrel=1e-12, limit=200
    )[0]
    assert abs(res.value - oracle) <= 1e-10 * abs(oracle)
    assert abs(res.value - log_weight_integral(gamma, delta, 1.0)) <= 1e-10 * abs(oracle)


def test_beta_moment_limits():
    # int_0^1 (1-r)^(-1/2) r dr = B(2, 1/2) = 4/3, and the m = 2 variant.
    res = integrate_power_endpoint(lambda r: r, -0.5, "right", 0.0, 1.0, rel_tol=1e-12)
    assert abs(res.value - beta_complete(2.0, 0.5)) <= 1e-10
    res = integrate_power_endpoint(lambda r: r * r, -0.5, "right", 0.0, 1.0, rel_tol=1e-12)
    assert abs(res.value - beta_complete(3.0, 0.5)) <= 1e-10


def test_shell_closed_form_example():
    # int_0^(1-d) (1-r)^(-1.5) r dr = 2/sqrt(d) + 2 sqrt(d) - 4 at d = 1e-4.
    expected = 2e2 + 2e-2 - 4.0
    res = integrate_power_endpoint(lambda r: r, -1.5, "right", 0.0, 1.0 - 1e-4)
    assert abs(res.value - expected) <= 1e-8 * expected
    assert abs(power_binomial_integral(-1.5, 1, 1e-4, 1.0) - expected) <= 1e-12 * expected


def test_log_weight_examples():
    # f = 1, gamma = 1 over [e^-9, 1]: log(1 - log delta) = log 10.
    res = integrate_log_weighted(lambda t: np.ones_like(t), 1.0, math.exp(-9.0), 1.0)
    assert abs(res.value - math.log(10.0)) <= 1e-12
    # gamma = 2, delta -> 0: integral of tau^-2 over [1, inf) = 1.
    assert abs(log_weight_integral(2.0, 1e-300, 1.0) - 1.0) <= 1e-12
    # Empty interval.
    assert integrate_log_weighted(lambda t: np.ones_like(t), 1.0, 1.0, 1.0).value == 0.0


def test_determinism():
    def f(t):
        return np.sin(t) / np.sqrt(t)

    first = integrate(f, 0.01, 3.0, rel_tol=1e-11)
    second = integrate(f, 0.01, 3.0, rel_tol=1e-11)
    assert first.value == second.value
    assert first.error_estimate == second.error_estimate
    assert first.subdivisions == second.subdivisions


@pytest.mark.parametrize("c", [0.3, 1.0, 2.4])
def test_splitting_consistency(c):
    def f(t):
        return np.exp(-t) * np.power(t, -0.5)

    whole = integrate(f, 0.1, 3.0, rel_tol=1e-11)
    left = integrate(f, 0.1, c, rel_tol=1e-11)
    right = integrate(f, c, 3.0, rel_tol=1e-11)
    combined_err = whole.error_estimate + left.error_estimate + right.error_estimate
    assert abs(whole.value - (left.value + right.value)) <= combined_err + 1e-13


def test_budget_exhaustion_is_an_error():
    with pytest.raises(NonconvergenceError):
        integrate(lambda t: 1.0 / t, 0.0, 1.0, max_panels=200)


def test_infinite_interval_rejected():
    with pytest.raises(DivergentIntegralError):
        integrate(lambda t: np.exp(-t), 0.0, math.inf)


def test_power_endpoint_validation():
    with pytest.raises(DivergentIntegralError):
        integrate_power_endpoint(lambda r: r, -1.0, "right", 0.0, 1.0)
    with pytest.raises(ValueError):
        integrate_power_endpoint(lambda r: r, -0.5, "middle", 0.0, 1.0)


def test_log_weight_validation():
    with pytest.raises(ValueError):
        integrate_log_weighted(lambda t: t, 1.0, 0.5, 1.5)
    with pytest.raises(ValueError):
        log_weight_integral(1.0, 0.0, 1.0)


def test_power_integral_edge_cases():
    assert power_integral(-1.0, 0.1, 1.0) == pytest.approx(math.log(10.0), rel=1e-14)
    with pytest.raises(DivergentIntegralError):
        power_integral(-1.0, 0.0, 1.0)
    # Tiny exponent: expm1 path agrees with the log limit.
    tiny = power_integral(-1.0 + 1e-13, 0.1, 1.0)
    assert abs(tiny - math.log(10.0)) <= 1e-11


@given(
    p=st.floats(-0.9, 3.0),
    a=st.floats(0.05, 1.0),
    width=st.floats(0.1, 2.0),
    split=st.floats(0.1, 0.9),
)
@settings(max_examples=60, deadline=None)
def test_power_integral_additivity(p, a, width, split):
    b = a + width
    c = a + split * width
    whole = power_integral(p, a, b)
    parts = power_integral(p, a, c) + power_integral(p, c, b)
    assert abs(whole - parts) <= 1e-12 * max(1.0, abs(whole))


@given(gamma=st.floats(1.0, 4.0), lo=st.floats(1e-6, 0.3), hi=st.floats(0.4, 1.0))
@settings(max_examples=60, deadline=None)
def test_log_weight_integral_positive_and_monotone(gamma, lo, hi):
    value = log_weight_integral(gamma, lo, hi)
    assert value >= 0.0
    assert log_weight_integral(gamma, lo / 2.0, hi) >= value
