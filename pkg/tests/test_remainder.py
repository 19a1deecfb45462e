"""Remainder function and its minimum.

At A = 1 no lattice term is active yet, so f_mu(1) = B(1 + mu, 1/2)/2
exactly. That closed form, the truncated-sum identity, and a direct numpy
lattice sum serve as oracles for the scanned minimum.
"""

import math

import numpy as np
import pytest

import berezin_lab.remainder as remainder
from berezin_lab.errors import TailGuardError
from berezin_lab.remainder import DEFAULT_TOL, epsilon_mu, f_mu, nu_bounds
from berezin_lab.specfun import beta


def lattice_sum_oracle(mu, a):
    k = np.arange(1.0, math.floor(a) + 1.0)
    return float(np.sum(np.clip(1.0 - (k / a) ** 2, 0.0, None) ** mu))


def test_value_at_one_is_half_beta():
    for mu in (0.5, 1.0, 2.0, 5.0):
        assert f_mu(mu, 1.0) == pytest.approx(0.5 * beta(1.0 + mu, 0.5), rel=1e-14)


def test_truncated_sum_identity():
    rng = np.random.default_rng(97)
    for mu in (0.5, 1.5, 2.0, 3.7):
        for a in 1.0 + 99.0 * rng.random(40):
            a = float(a)
            direct = 0.5 * a * beta(1.0 + mu, 0.5) - lattice_sum_oracle(mu, a)
            assert f_mu(mu, a) == pytest.approx(direct, abs=1e-12)


def test_large_argument_limit():
    assert f_mu(2.0, 1e6) == pytest.approx(0.5, abs=1e-3)
    assert abs(f_mu(2.0, 1e4) - 0.5) <= 0.01
    assert abs(f_mu(2.0, 1e5) - 0.5) <= 0.001


def test_positive_on_sampled_range():
    rng = np.random.default_rng(1234)
    for a in 1.0 + 99.0 * rng.random(1000):
        assert f_mu(2.0, float(a)) > 0.0


def test_argument_validation():
    with pytest.raises(ValueError):
        f_mu(2.0, 0.5)
    with pytest.raises(ValueError):
        f_mu(0.0, 2.0)
    with pytest.raises(ValueError):
        f_mu(-1.0, 2.0)
    with pytest.raises(ValueError):
        f_mu(math.inf, 2.0)


def test_minimum_for_mu_two():
    res = epsilon_mu(2.0)
    assert 1.91 < 4.0 * res.epsilon <= 2.0
    assert f_mu(2.0, res.argmin_a) == pytest.approx(res.epsilon, abs=10.0 * DEFAULT_TOL)
    # the minimum sits between the first and second lattice kinks
    assert 1.0 < res.argmin_a < 2.0


def test_minimum_bounded_by_endpoint_value():
    # f_mu(1) is an admissible candidate, so epsilon <= B(1+mu,1/2)/2;
    # combined with positivity this gives the admissible range of 2*epsilon
    for mu in (0.5, 1.0, 2.0, 5.0):
        res = epsilon_mu(mu)
        assert 0.0 < res.epsilon <= 0.5 * beta(1.0 + mu, 0.5) + 1e-15
        assert 2.0 * res.epsilon <= min(1.0, beta(1.0 + mu, 0.5)) + 1e-12


def test_minimum_is_global_on_samples():
    rng = np.random.default_rng(777)
    for mu in (1.5, 2.0, 2.5, 3.0):
        eps = epsilon_mu(mu).epsilon
        for a in 1.0 + 59.0 * rng.random(1000):
            assert f_mu(mu, float(a)) >= eps - 1e-12


def test_scan_step_insensitivity(monkeypatch):
    coarse = epsilon_mu(2.25)
    epsilon_mu.cache_clear()
    monkeypatch.setattr(remainder, "_SCAN_STEP", 5e-4)
    try:
        fine = epsilon_mu(2.25)
    finally:
        epsilon_mu.cache_clear()
    assert abs(fine.epsilon - coarse.epsilon) < 10.0 * DEFAULT_TOL
    assert abs(fine.argmin_a - coarse.argmin_a) < 1e-6


def test_semiclassical_deficit_dominates_lattice_sums():
    # the defining inequality: sum over the lattice never exceeds the
    # semiclassical term minus the located minimum
    rng = np.random.default_rng(424242)
    for mu in 0.5 + 9.5 * rng.random(25):
        mu = float(mu)
        eps = epsilon_mu(mu).epsilon
        a = 1.0 + 79.0 * rng.random(400)
        half = 0.5 * a * beta(1.0 + mu, 0.5)
        sums = np.array([lattice_sum_oracle(mu, float(x)) for x in a])
        assert np.all(sums <= half - eps + 1e-9)


def test_tail_guard_detects_late_dip(monkeypatch):
    real_grid = remainder._f_grid

    def dipped(mu, a):
        out = real_grid(mu, a)
        return np.where(a > 8.0, out - 1.0, out)

    epsilon_mu.cache_clear()
    monkeypatch.setattr(remainder, "_f_grid", dipped)
    try:
        with pytest.raises(TailGuardError):
            epsilon_mu(2.0, 8.0)
    finally:
        epsilon_mu.cache_clear()


def test_epsilon_argument_validation():
    with pytest.raises(ValueError):
        epsilon_mu(2.0, 1.5)
    with pytest.raises(ValueError):
        epsilon_mu(2.0, 60.0, 0.0)
    with pytest.raises(ValueError):
        epsilon_mu(0.0)


def test_nu_bounds_planar_three_halves():
    lower, upper = nu_bounds(1.5, 2)
    assert lower == pytest.approx(4.0 * epsilon_mu(2.0).epsilon, rel=1e-15)
    assert lower > 1.91
    assert upper == 2.0  # B(3, 1/2) = 16/15 > 1, so the cap at 1 binds


def test_nu_bounds_ordering():
    for sigma in (1.5, 2.0, 3.0):
        for dim in (2, 3, 4):
            lower, upper = nu_bounds(sigma, dim)
            assert 0.0 < lower <= upper


def test_nu_bounds_validation():
    with pytest.raises(ValueError):
        nu_bounds(1.0, 2)
    with pytest.raises(ValueError):
        nu_bounds(1.5, 1)
    with pytest.raises(ValueError):
        nu_bounds(1.5, 2.0)
