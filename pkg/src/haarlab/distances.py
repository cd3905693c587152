"""Wasserstein-1 distances between samples and Gaussian laws.

In one dimension W1 is the L1 distance between quantile functions, so for
an N-point sample it reduces to an average over order statistics. Against
a Gaussian the population quantiles are taken at the midpoints (i-0.5)/N,
the standard plug-in that is exact for a sample placed on those quantiles.

Estimates carry Monte Carlo bias of order sigma/sqrt(N); noise_floor
quantifies it so rate fits can discard points drowned in sampling noise.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import norm

from .fluctuations import EmpiricalDistribution, GaussianSpec

__all__ = [
    "noise_floor",
    "wasserstein1_empirical",
    "wasserstein1_to_gaussian",
]


def wasserstein1_to_gaussian(emp: EmpiricalDistribution, gauss: GaussianSpec) -> float:
    """W1 between an empirical sample and N(mean, variance).

    Computes (1/N) sum_i |x_(i) - q_i| with q_i the Gaussian quantile at
    (i - 0.5)/N. The quantile function (scipy's norm.ppf) is accurate to
    machine precision, far inside the 1e-9 contract.
    """
    if emp.count < 1:
        raise ValueError("need at least 1 observation")
    n = emp.count
    p = (np.arange(1, n + 1) - 0.5) / n
    quantiles = gauss.mean + gauss.sigma * norm.ppf(p)
    return float(np.mean(np.abs(emp.sorted_values - quantiles)))


def wasserstein1_empirical(a: EmpiricalDistribution, b: EmpiricalDistribution) -> float:
    """W1 between two equal-size samples: mean absolute quantile gap."""
    if a.count != b.count:
        raise ValueError(f"sample sizes differ: {a.count} vs {b.count}")
    if a.count < 1:
        raise ValueError("need at least 1 observation")
    return float(np.mean(np.abs(a.sorted_values - b.sorted_values)))


def noise_floor(sigma: float, replicas: int) -> float:
    """Expected W1 between an N-point Gaussian sample and its own law.

    The plug-in estimator cannot resolve distances below about
    sigma*sqrt(pi/2)/sqrt(N); points under a few multiples of this are
    sampling noise, not signal.
    """
    if sigma < 0.0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    if replicas < 1:
        raise ValueError(f"replica count must be >= 1, got {replicas}")
    return float(sigma * np.sqrt(np.pi / 2.0) / np.sqrt(replicas))
