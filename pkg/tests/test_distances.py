import numpy as np
import pytest
from scipy.stats import norm

from haarlab import (
    EmpiricalDistribution,
    GaussianSpec,
    noise_floor,
    wasserstein1_empirical,
    wasserstein1_to_gaussian,
)


def test_point_mass_against_gaussian():
    # W1(delta_0, N(0, sigma^2)) = sigma * E|Z| = sigma * sqrt(2/pi)
    emp = EmpiricalDistribution(np.zeros(100000))
    got = wasserstein1_to_gaussian(emp, GaussianSpec(0.0, 4.0))
    assert abs(got - 2.0 * np.sqrt(2.0 / np.pi)) < 2e-3


def test_exact_quantiles_score_zero():
    n = 5000
    p = (np.arange(1, n + 1) - 0.5) / n
    values = 1.5 + 0.7 * norm.ppf(p)
    emp = EmpiricalDistribution(values)
    assert wasserstein1_to_gaussian(emp, GaussianSpec(1.5, 0.49)) <= 1e-12


def test_shift_costs_exactly_the_shift():
    n = 5000
    p = (np.arange(1, n + 1) - 0.5) / n
    values = norm.ppf(p)
    emp = EmpiricalDistribution(values + 0.3)
    got = wasserstein1_to_gaussian(emp, GaussianSpec(0.0, 1.0))
    assert abs(got - 0.3) <= 1e-12


def test_shift_bound_on_random_sample():
    rng = np.random.default_rng(7)
    base = rng.normal(size=2000)
    d0 = wasserstein1_to_gaussian(EmpiricalDistribution(base), GaussianSpec(0.0, 1.0))
    d1 = wasserstein1_to_gaussian(
        EmpiricalDistribution(base + 0.25), GaussianSpec(0.0, 1.0)
    )
    assert d1 <= d0 + 0.25 + 1e-12


def test_empirical_distance_simple_pairs():
    a = EmpiricalDistribution(np.array([0.0, 0.0]))
    b = EmpiricalDistribution(np.array([1.0, 1.0]))
    assert wasserstein1_empirical(a, b) == 1.0
    c = EmpiricalDistribution(np.array([0.0, 2.0]))
    d = EmpiricalDistribution(np.array([1.0, 1.0]))
    assert wasserstein1_empirical(c, d) == 1.0


def test_empirical_distance_is_symmetric():
    rng = np.random.default_rng(3)
    a = EmpiricalDistribution(rng.normal(size=100))
    b = EmpiricalDistribution(rng.normal(size=100))
    assert wasserstein1_empirical(a, b) == wasserstein1_empirical(b, a)


def test_empirical_distance_triangle_inequality():
    rng = np.random.default_rng(11)
    samples = [EmpiricalDistribution(rng.normal(size=64)) for _ in range(3)]
    ab = wasserstein1_empirical(samples[0], samples[1])
    bc = wasserstein1_empirical(samples[1], samples[2])
    ac = wasserstein1_empirical(samples[0], samples[2])
    assert ac <= ab + bc + 1e-12


def test_empirical_distance_needs_equal_counts():
    a = EmpiricalDistribution(np.zeros(3))
    b = EmpiricalDistribution(np.zeros(4))
    with pytest.raises(ValueError):
        wasserstein1_empirical(a, b)


def test_empty_sample_rejected():
    with pytest.raises(ValueError):
        EmpiricalDistribution(np.array([]))


def test_noise_floor_formula():
    assert abs(noise_floor(2.0, 10000) - 2.0 * np.sqrt(np.pi / 2) / 100.0) < 1e-15
    assert noise_floor(0.0, 5) == 0.0


def test_noise_floor_argument_checks():
    with pytest.raises(ValueError):
        noise_floor(-1.0, 10)
    with pytest.raises(ValueError):
        noise_floor(1.0, 0)


def test_noise_floor_matches_estimator_bias():
    # the estimator applied to perfect Gaussian draws hovers near the floor
    rng = np.random.default_rng(19)
    n = 4000
    scores = [
        wasserstein1_to_gaussian(
            EmpiricalDistribution(rng.normal(size=n)), GaussianSpec(0.0, 1.0)
        )
        for _ in range(20)
    ]
    floor = noise_floor(1.0, n)
    mean_score = np.mean(scores)
    assert 0.2 * floor < mean_score < 5.0 * floor


def test_gaussian_quantile_roundtrip_precision():
    # the quantile function must invert the cdf to well below our tolerances
    p = np.array([1e-12, 1e-6, 0.3, 0.5, 0.9, 1 - 1e-6, 1 - 1e-12])
    assert np.max(np.abs(norm.cdf(norm.ppf(p)) - p)) <= 1e-9
