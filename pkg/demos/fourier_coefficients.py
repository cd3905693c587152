#!/usr/bin/env python3
"""Coefficient tables for the built-in test functions.

For each family the script prints the leading Fourier coefficients, the
smoothness-based decay bound |fhat_j| <= ||f^(k)||_1 / j^k, and the
limiting CLT variance 2 sum j |fhat_j|^2. A log-log fit of |fhat_j|
recovers the decay exponent kappa of the power family.
"""
import numpy as np

from haarlab import (
    coefficient_decay_bound,
    estimate_decay,
    geometric,
    power_decay,
    sigma_squared,
    trig_polynomial,
)

FUNCTIONS = [
    trig_polynomial({1: 1.0, 2: 0.5}, identifier="2cos(x) + cos(2x)"),
    power_decay(3.0, max_index=512),
    geometric(0.6),
]

for f in FUNCTIONS:
    series = f.exact_series
    print(f"== {f.identifier} ==")
    print(f"   smoothness k = {f.smoothness_k}, ||f^(k)||_1 = {f.derivative_norm:.4f}")
    print(f"   limiting variance sigma^2 = {sigma_squared(series):.6f}")
    print(f"   {'j':>4} {'|fhat_j|':>12} {'bound':>12}")
    for j in (1, 2, 3, 5, 8, 13):
        if j > series.max_index:
            break
        bound = coefficient_decay_bound(f.smoothness_k, f.derivative_norm, j)
        print(f"   {j:>4} {abs(series.coefficient(j)):>12.6f} {bound:>12.6f}")
    mags = np.abs(series.coeffs[1:])
    if np.count_nonzero(mags) >= 5:
        fit = estimate_decay(series)
        print(f"   fitted decay: kappa_hat = {fit.kappa_hat:.4f}, "
              f"C_hat = {fit.c_kappa_hat:.4f} (residual {fit.fit_residual:.2e})")
    print()
