"""Special-function layer: values, reductions, and error-bound honesty."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hpfrac import DomainError, NonConvergence, PoleError
from hpfrac.specfun import (MLParams, SeriesEvaluation, gamma_fn,
                            gamma_ratio_asymptotic, ml3, prabhakar_kernel)
from hpfrac.specfun import ml3_many

from oracles import ml3_oracle


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# ----------------------------------------------------------------- ml3


def test_ml3_exponential_point():
    ev = ml3(1.0, 1.0, 1.0, 1.0)
    assert rel_err(ev.value, math.e) < 1e-13
    assert ev.error_bound < 1e-12


def test_ml3_exponential_on_interval():
    # Below z ~ -5 the alternating series cancels at the float64 noise
    # floor (relative error ~ e^{2|z|} eps); there the honest error bound
    # is the contract, and 1e-11 relative holds wherever the bound allows.
    for z in np.linspace(-10.0, 10.0, 41):
        ev = ml3(1.0, 1.0, 1.0, complex(z))
        assert abs(ev.value - math.exp(z)) <= ev.error_bound
        if z >= -5.0:
            assert rel_err(ev.value, math.exp(z)) < 1e-11


def test_ml3_gamma_zero_is_constant():
    rng = np.random.default_rng(11)
    for _ in range(20):
        z = rng.uniform(0, 10) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        ev = ml3(0.7, 1.4, 0.0, z)
        assert abs(ev.value - 1.0 / gamma_fn(1.4)) < 1e-13
        assert ev.error_bound == 0.0  # terminating polynomial


def test_ml3_cosh_point():
    ev = ml3(2.0, 1.0, 1.0, 1.0)
    assert rel_err(ev.value, math.cosh(1.0)) < 1e-13


def test_ml3_at_zero_argument():
    for rho, mu, gamma in [(0.5, 0.7, 1.3), (1.0, 2.0, -0.4), (2.0, 0.3, 3.0)]:
        ev = ml3(rho, mu, gamma, 0.0)
        assert abs(ev.value - 1.0 / gamma_fn(mu)) < 1e-13


def test_ml3_terminating_negative_integer_gamma():
    # gamma = -2: polynomial with exactly 3 terms, zero error bound
    ev = ml3(0.8, 1.1, -2.0, 2.5 - 1.0j)
    assert ev.error_bound == 0.0
    assert ev.terms_used == 3
    assert rel_err(ev.value, ml3_oracle(0.8, 1.1, -2.0, 2.5 - 1.0j)) < 1e-14


def test_ml3_oracle_agreement_sample():
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 25:
        rho = rng.uniform(0.05, 2.0)
        mu = rng.uniform(0.05, 3.0)
        gamma = rng.uniform(-3.0, 3.0)
        z = rng.uniform(0, 10) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        if abs(z) > min(10.0, 50.0 ** rho):
            continue  # beyond series reach at desk scale
        try:
            ev = ml3(rho, mu, gamma, z)
        except NonConvergence:
            continue
        oracle = ml3_oracle(rho, mu, gamma, z)
        # the bound must hold on every evaluable draw, including
        # cancellation-dominated ones
        assert abs(ev.value - oracle) <= ev.error_bound + 1e-15 * max(1.0, abs(oracle))
        if ev.error_bound <= 1e-10 * max(abs(ev.value), 1e-300):
            assert rel_err(ev.value, oracle) < 1e-10
            checked += 1


def test_ml3_rejects_bad_domain():
    with pytest.raises(DomainError):
        ml3(-1.0, 1.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        ml3(1.0, -0.5, 1.0, 0.5)
    with pytest.raises(DomainError):
        ml3(1.0, 1.0, 1.0, 0.5, eps=0.0)


def test_ml3_nonconvergence_beyond_series_reach():
    with pytest.raises(NonConvergence):
        ml3(0.1, 0.5, 1.0, 8.0)


@settings(max_examples=40, deadline=None)
@given(rho=st.floats(0.1, 2.0), mu=st.floats(0.1, 3.0),
       gamma=st.floats(-3.0, 3.0))
def test_ml3_zero_argument_property(rho, mu, gamma):
    ev = ml3(rho, mu, gamma, 0.0)
    assert abs(ev.value - 1.0 / gamma_fn(mu)) < 1e-13


@settings(max_examples=30, deadline=None)
@given(n=st.integers(0, 6), rho=st.floats(0.3, 2.0), mu=st.floats(0.3, 3.0),
       x=st.floats(-3.0, 3.0))
def test_ml3_terminating_property(n, rho, mu, x):
    ev = ml3(rho, mu, float(-n), complex(x))
    assert ev.error_bound == 0.0
    # the polynomial terminates after n + 1 terms; for |x| so small that
    # later terms cannot perturb the sum the series may stop even earlier
    assert ev.terms_used <= n + 1
    if abs(x) > 1e-3:
        assert ev.terms_used == n + 1


def test_ml3_many_matches_scalar():
    z = np.array([0.3 + 0.1j, -2.0, 1.5j, -0.7 - 0.7j])
    vec = ml3_many(0.6, 1.2, 0.8, z)
    for zi, vi in zip(z, vec):
        assert abs(vi - ml3(0.6, 1.2, 0.8, zi).value) < 1e-12


# ------------------------------------------------------------- kernel


def test_kernel_trivials():
    assert abs(prabhakar_kernel(MLParams(1.0, 1.0, 0.0, 3.3), 2.0).value - 1.0) < 1e-14
    assert abs(prabhakar_kernel(MLParams(1.0, 2.0, 0.0, 0.0), 3.0).value - 3.0) < 1e-14


def test_kernel_oracle_point():
    from oracles import prabhakar_kernel_oracle

    got = prabhakar_kernel(MLParams(0.5, 0.7, 1.3, -1.0), 1.0)
    want = prabhakar_kernel_oracle(0.5, 0.7, 1.3, -1.0, 1.0)
    assert rel_err(got.value, want) < 1e-12


def test_kernel_rejects_nonpositive_time():
    with pytest.raises(DomainError):
        prabhakar_kernel(MLParams(1.0, 0.5, 1.0, 0.0), 0.0)


# ---------------------------------------------------------------- gamma


def test_gamma_fn_values():
    assert gamma_fn(1.0) == 1.0
    assert abs(gamma_fn(0.5) - math.sqrt(math.pi)) < 1e-13
    assert abs(gamma_fn(4.0) - 6.0) < 1e-12
    assert abs(gamma_fn(2.5 + 1.0j) - complex(np.exp(
        __import__("scipy.special", fromlist=["loggamma"]).loggamma(2.5 + 1.0j)))) < 1e-12


def test_gamma_fn_pole():
    for z in (0.0, -1.0, -7.0):
        with pytest.raises(PoleError):
            gamma_fn(z)


def test_gamma_ratio_asymptotic():
    assert gamma_ratio_asymptotic(1e6, 0.4, 0.4) == 1.0
    assert abs(gamma_ratio_asymptotic(100.0, 1.0, 0.0) - 100.0) < 1e-10
    direct = gamma_fn(50.0 + 0.3) / gamma_fn(50.0 + 0.9)
    assert rel_err(gamma_ratio_asymptotic(50.0, 0.3, 0.9), direct) < 1e-3


# ------------------------------------------------------------- plumbing


def test_mlparams_validation():
    with pytest.raises(DomainError):
        MLParams(rho=-1.0, mu=1.0, gamma=0.0)
    with pytest.raises(DomainError):
        MLParams(rho=1.0, mu=float("nan"), gamma=0.0)


def test_series_evaluation_validation():
    with pytest.raises(DomainError):
        SeriesEvaluation(1.0, 1, -1e-3)
    with pytest.raises(DomainError):
        SeriesEvaluation(1.0, 0, 0.0)
