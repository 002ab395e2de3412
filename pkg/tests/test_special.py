import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrlab.errors import ConvergenceError, DomainError
from bohrlab.special import HypergeometricParams, gauss_2f1, pochhammer, polylog


def brute_polylog(s, x, n_terms=200_000):
    n = np.arange(1, n_terms + 1, dtype=float)
    tail = x ** (n_terms + 1) / ((n_terms + 1) ** s * (1 - x))
    return math.fsum(x**n / n**s), tail


@pytest.mark.parametrize("a, n, expected", [(1, 0, 1.0), (1, 5, 120.0), (2.5, 3, 39.375)])
def test_pochhammer_examples(a, n, expected):
    assert pochhammer(a, n) == pytest.approx(expected, rel=1e-15)


def test_pochhammer_rejects_negative_n():
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


def test_pochhammer_overflow():
    with pytest.raises(OverflowError):
        pochhammer(10.0, 400)


@given(st.floats(0.01, 20), st.integers(0, 60))
def test_pochhammer_recurrence(a, n):
    assert pochhammer(a, n + 1) == pytest.approx(pochhammer(a, n) * (a + n), rel=1e-14)


@pytest.mark.parametrize("s, x, expected", [(1, 0.5, math.log(2.0)), (2, 0.0, 0.0), (3, 0.0, 0.0)])
def test_polylog_examples(s, x, expected):
    assert polylog(s, x) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("x", [0.1, 0.5, 0.9, 0.99])
def test_polylog_against_partial_sums(s, x):
    partial, tail = brute_polylog(s, x)
    assert abs(polylog(s, x) - partial) <= tail + 1e-14


def test_dilog_known_value():
    # Li2(1/2) = pi^2/12 - log(2)^2/2
    assert polylog(2, 0.5) == pytest.approx(math.pi**2 / 12 - math.log(2) ** 2 / 2, abs=1e-15)


@given(st.floats(0.0, 0.99))
def test_polylog_one_is_log(x):
    assert abs(polylog(1, x) + math.log1p(-x)) <= 1e-13


@given(st.sampled_from([1, 2, 3]), st.floats(0.0, 0.98), st.floats(1e-3, 1e-2))
def test_polylog_increasing(s, x, dx):
    assert polylog(s, x + dx) > polylog(s, x)


@pytest.mark.parametrize("s, x", [(2, 1.0), (2, -0.1), (3, 1.5), (4, 0.5)])
def test_polylog_domain(s, x):
    with pytest.raises(DomainError):
        polylog(s, x)


def test_gauss_examples():
    assert gauss_2f1(HypergeometricParams(1, 1, 2), 0.5) == pytest.approx(
        -math.log(0.5) / 0.5, rel=1e-14)
    assert gauss_2f1(HypergeometricParams(0.5, 1, 1), 0.64) == pytest.approx(5 / 3, rel=1e-14)
    assert gauss_2f1(HypergeometricParams(3.2, 0.4, 1.7), 0.0) == 1.0


@pytest.mark.parametrize("z", [0.1 * i for i in range(1, 10)])
def test_gauss_log_case(z):
    assert gauss_2f1(HypergeometricParams(1, 1, 2), z) == pytest.approx(
        -math.log1p(-z) / z, rel=1e-12)


@given(st.floats(0.05, 5.0), st.floats(0.0, 0.95))
def test_gauss_binomial_case(a, z):
    exact = (1 - z) ** (-a)
    assert abs(gauss_2f1(HypergeometricParams(a, 1, 1), z) - exact) <= 1e-12 * exact


def test_gauss_arcsin_case():
    # 2F1(1/2, 1/2; 3/2; z^2) = arcsin(z)/z
    z = 0.8
    assert gauss_2f1(HypergeometricParams(0.5, 0.5, 1.5), z * z) == pytest.approx(
        math.asin(z) / z, rel=1e-13)


def test_gauss_iteration_cap():
    # terms still grow far beyond 1e6 when a, b dwarf c
    with pytest.raises(ConvergenceError):
        gauss_2f1(HypergeometricParams(1e7, 1e7, 0.1), 0.999999)


@pytest.mark.parametrize("a, b, c", [(0, 1, 1), (1, -1, 1), (1, 1, 0)])
def test_params_positive(a, b, c):
    with pytest.raises(DomainError):
        HypergeometricParams(a, b, c)


def test_coefficients_match_pochhammer():
    params = HypergeometricParams(0.7, 1.3, 2.2)
    gamma = params.coefficients(12)
    for n in range(12):
        oracle = (pochhammer(0.7, n) * pochhammer(1.3, n)
                  / (pochhammer(2.2, n) * pochhammer(1, n)))
        assert gamma[n] == pytest.approx(oracle, rel=1e-13)
