import numpy as np
import pytest

from haarlab import (
    RateFit,
    optimal_truncation,
    rate_regression,
    theoretical_rate,
    trofpow_rate,
    truncation_objective,
)


# ---- theoretical CLT rate ---------------------------------------------------


def test_rate_at_power_of_two():
    # n = 512, k = 2: 512 ** (-1/4.5) = 2 ** (-2) exactly
    assert theoretical_rate(2, 512) == 0.25


def test_rate_at_n_one():
    assert theoretical_rate(5, 1) == 1.0


def test_rate_argument_checks():
    with pytest.raises(ValueError):
        theoretical_rate(1, 10)
    with pytest.raises(TypeError):
        theoretical_rate(2.5, 10)
    with pytest.raises(ValueError):
        theoretical_rate(2, 0)


def test_rate_decreases_in_n():
    values = [theoretical_rate(3, n) for n in (4, 8, 16, 64, 256)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_rate_exponent_approaches_one():
    # (k-1)/(k+2.5) -> 1, so the decay gets steeper with smoothness
    assert theoretical_rate(2, 100) > theoretical_rate(6, 100) > theoretical_rate(40, 100)


def test_rate_accepts_numpy_integers():
    assert theoretical_rate(np.int64(2), 512) == 0.25


# ---- traces-of-powers rate --------------------------------------------------


def test_trofpow_examples():
    assert abs(trofpow_rate(4, 2, 10) - 0.4) <= 1e-12
    assert trofpow_rate(1, 1, 2) == 0.5
    # r = d: first branch d^{7/2}/n, second branch 0
    assert abs(trofpow_rate(3, 3, 100) - 3.0**3.5 / 100.0) <= 1e-12


def test_trofpow_argument_checks():
    with pytest.raises(ValueError):
        trofpow_rate(2, 0, 10)  # r < 1
    with pytest.raises(ValueError):
        trofpow_rate(2, 3, 10)  # r > d
    with pytest.raises(ValueError):
        trofpow_rate(3, 2, 5)  # n < 2d


def test_trofpow_matches_direct_formula():
    for d, r, n in ((5, 2, 20), (8, 8, 16), (6, 1, 40)):
        first = r**3.5 / (d - r + 1) ** 1.5
        second = (d - r) ** 1.5 * np.sqrt(r)
        assert trofpow_rate(d, r, n) == pytest.approx(max(first, second) / n, rel=1e-14)


# ---- optimal truncation -----------------------------------------------------


def exhaustive_best(k, n):
    best_d, best_val = 1, truncation_objective(1, k, n)
    for d in range(2, n // 2 + 1):
        val = truncation_objective(d, k, n)
        if val < best_val:
            best_d, best_val = d, val
    return best_d


@pytest.mark.parametrize("k", [2, 3, 4])
def test_optimal_truncation_matches_exhaustive_search(k):
    for n in range(2, 201):
        assert optimal_truncation(k, n) == exhaustive_best(k, n), (k, n)


def test_optimal_truncation_known_value():
    assert optimal_truncation(2, 1000) in (3, 4)
    assert optimal_truncation(2, 1000) == exhaustive_best(2, 1000)


def test_optimal_truncation_growth_rate():
    # d* ~ n^{2/(5+2k)}; for k = 2 the ratio over a 512x size jump is ~ 512^{2/9} = 4
    small = optimal_truncation(2, 1000)
    large = optimal_truncation(2, 512000)
    assert 3.0 < large / small < 5.5


def test_optimal_truncation_argument_checks():
    with pytest.raises(ValueError):
        optimal_truncation(1, 100)
    with pytest.raises(ValueError):
        optimal_truncation(2, 0)


def test_truncation_objective_value():
    assert truncation_objective(2, 3, 100) == 1 / 4 + 2**3.5 / 100


# ---- log-log regression -----------------------------------------------------


def test_regression_recovers_exact_power_law():
    points = [(n, theoretical_rate(2, n)) for n in (8, 16, 32, 64, 128)]
    fit = rate_regression(points)
    assert abs(fit.slope - (-1 / 4.5)) <= 1e-10
    assert fit.stderr <= 1e-10
    assert fit.points == tuple((float(n), float(v)) for n, v in points)


def test_regression_tolerates_noise():
    rng = np.random.default_rng(23)
    points = [
        (n, (1.0 / n) * float(np.exp(rng.normal(scale=0.01)))) for n in (8, 16, 32, 64)
    ]
    fit = rate_regression(points)
    assert abs(fit.slope + 1.0) < 0.1


def test_regression_accepts_repeated_sizes():
    points = [(8, 0.5), (8, 0.6), (16, 0.3), (16, 0.25)]
    fit = rate_regression(points)
    assert fit.slope < 0


def test_regression_argument_checks():
    with pytest.raises(ValueError):
        rate_regression([(8, 0.5), (16, 0.3)])  # too few
    with pytest.raises(ValueError):
        rate_regression([(8, 0.5), (16, -0.3), (32, 0.1)])  # nonpositive distance
    with pytest.raises(ValueError):
        rate_regression([(8, 0.5), (8, 0.4), (8, 0.3)])  # one distinct size


def test_rate_fit_is_frozen():
    fit = RateFit(points=((1.0, 1.0),), slope=0.0, intercept=0.0, stderr=0.0)
    with pytest.raises(AttributeError):
        fit.slope = 1.0
