"""Convergence-rate formulas and empirical rate fitting.

The Wasserstein distance between the fluctuation law and its Gaussian
limit is bounded by C * n^(-(k-1)/(k+5/2)) for C^k test functions. That
rate comes from balancing two error sources: the discarded Fourier tail,
which shrinks like 1/d^(k-1), and the joint trace CLT error, which grows
like d^(7/2)/n. The functions here evaluate those formulas, pick the
integer truncation that balances them, and fit observed rates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "RateFit",
    "optimal_truncation",
    "rate_regression",
    "theoretical_rate",
    "trofpow_rate",
    "truncation_objective",
]


@dataclass(frozen=True)
class RateFit:
    """Least-squares line through (log n, log distance) points."""

    points: tuple[tuple[float, float], ...]
    slope: float
    intercept: float
    stderr: float


def theoretical_rate(k: int, n: int) -> float:
    """Rate n^(-(k-1)/(k+5/2)) for a C^k test function (unit constant)."""
    if not isinstance(k, (int, np.integer)):
        raise TypeError(f"smoothness order must be an integer, got {k!r}")
    if k < 2:
        raise ValueError(f"smoothness order must be >= 2, got {k}")
    if n < 1:
        raise ValueError(f"matrix size must be >= 1, got {n}")
    return float(n) ** (-(k - 1.0) / (k + 2.5))


def trofpow_rate(d: int, r: int, n: int) -> float:
    """Trace-vector CLT rate max{r^(7/2)/(d-r+1)^(3/2), (d-r)^(3/2) sqrt(r)}/n.

    Valid for the last r of the first d traces when n >= 2d; with r = d it
    collapses to d^(7/2)/n.
    """
    if not 1 <= r <= d:
        raise ValueError(f"need 1 <= r <= d, got r={r}, d={d}")
    if n < 2 * d:
        raise ValueError(f"the trace CLT regime requires n >= 2d, got n={n}, d={d}")
    first = float(r) ** 3.5 / float(d - r + 1) ** 1.5
    second = float(d - r) ** 1.5 * np.sqrt(float(r))
    return max(first, second) / n


def truncation_objective(d: int, k: int, n: int) -> float:
    """Total-error surrogate 1/d^(k-1) + d^(7/2)/n at cut d."""
    if d < 1:
        raise ValueError(f"truncation must be >= 1, got {d}")
    return 1.0 / float(d) ** (k - 1) + float(d) ** 3.5 / n


def optimal_truncation(k: int, n: int) -> int:
    """Integer truncation minimizing 1/d^(k-1) + d^(7/2)/n, capped at n/2.

    The continuous objective has its unique minimum at
    x_0 = (2(k-1)/7)^(2/(5+2k)) * n^(2/(5+2k)), so the integer minimizer
    is floor(x_0) or floor(x_0)+1; ties break to the smaller cut, and the
    result is clamped into 1..floor(n/2).
    """
    if not isinstance(k, (int, np.integer)):
        raise TypeError(f"smoothness order must be an integer, got {k!r}")
    if k < 2:
        raise ValueError(f"smoothness order must be >= 2, got {k}")
    if n < 1:
        raise ValueError(f"matrix size must be >= 1, got {n}")
    exponent = 2.0 / (5.0 + 2.0 * k)
    x0 = (2.0 * (k - 1.0) / 7.0) ** exponent * float(n) ** exponent
    d1 = max(1, int(np.floor(x0)))
    d2 = d1 + 1
    best = d1 if truncation_objective(d1, k, n) <= truncation_objective(d2, k, n) else d2
    return max(1, min(best, n // 2))


def rate_regression(points) -> RateFit:
    """Fit log(distance) = intercept + slope*log(n) by least squares.

    Needs at least 3 points with positive distances and at least 2
    distinct sizes; stderr is the residual standard error (2 fitted
    parameters).
    """
    pts = [(float(n), float(dist)) for n, dist in points]
    if len(pts) < 3:
        raise ValueError(f"rate fitting needs at least 3 points, got {len(pts)}")
    for n, dist in pts:
        if n < 1:
            raise ValueError(f"matrix sizes must be >= 1, got {n}")
        if not dist > 0.0:
            raise ValueError(f"distances must be positive for the log fit, got {dist}")
    log_n = np.log([n for n, _ in pts])
    log_d = np.log([dist for _, dist in pts])
    if np.unique(log_n).size < 2:
        raise ValueError("rate fitting needs at least 2 distinct sizes")
    slope, intercept = np.polyfit(log_n, log_d, 1)
    residuals = log_d - (slope * log_n + intercept)
    dof = len(pts) - 2
    stderr = float(np.sqrt(np.sum(residuals**2) / dof)) if dof > 0 else 0.0
    return RateFit(
        points=tuple(pts),
        slope=float(slope),
        intercept=float(intercept),
        stderr=stderr,
    )
