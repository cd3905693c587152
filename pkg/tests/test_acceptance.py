"""Acceptance gate: nine end-to-end criteria at pinned tolerances.

Each test prints one PASS/FAIL line (run with ``pytest -s`` to see them
on a green run; on failures the line is part of the assertion message).
Criteria, seeds, and tolerances are frozen; the suite is deterministic.

Criterion 5 (rate trend) is expected to fail at the pinned replica
budget: the Wasserstein distances of the smooth power-decay family sit
well below the Monte Carlo noise floor of a 5e4-replica estimate at
every matrix size measured, so no point qualifies for the trend check.
The test states the measured table; see the README for the analysis.
"""

import time

import numpy as np
import pytest

from haarlab import (
    EmpiricalDistribution,
    GaussianSpec,
    RngStream,
    coefficients_by_quadrature,
    fluctuation_eigen,
    fluctuation_trace,
    haar_unitary,
    noise_floor,
    optimal_truncation,
    phi_lipschitz_bound,
    power_decay,
    rate_regression,
    run_monte_carlo,
    sigma_squared,
    theoretical_rate,
    traces_of_powers,
    trig_polynomial,
    trofpow_rate,
    truncation_objective,
    truncation_tail_bound,
    orthogonality_table,
    wasserstein1_to_gaussian,
)

SEED = 1
TWO_TERM = trig_polynomial({1: 1.0, 2: 0.5}, identifier="two-term")


def _report(criterion: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    line = f"[acceptance] {criterion}: {status} - {detail}"
    print(line)
    assert ok, line


def test_criterion_1_orthogonality_relations():
    start = time.perf_counter()
    worst = 0.0
    failures = []
    for n in (3, 8):
        table = orthogonality_table(n, 10, 10_000, seed=SEED)
        for (i, j), est in table.items():
            target = est.conjugated_target
            checks = (
                ("plain_re", est.plain.real, 0.0, est.plain_se[0]),
                ("plain_im", est.plain.imag, 0.0, est.plain_se[1]),
                ("conj_re", est.conjugated.real, target, est.conjugated_se[0]),
                ("conj_im", est.conjugated.imag, 0.0, est.conjugated_se[1]),
            )
            for name, value, want, se in checks:
                dev = abs(value - want)
                if se > 0.0:
                    worst = max(worst, dev / se)
                if dev > 4.0 * se:
                    failures.append(f"n={n} ({i},{j}) {name}: |{value:.4f}-{want}|>{4*se:.4f}")
    elapsed = time.perf_counter() - start
    _report(
        "criterion 1 (orthogonality relations)",
        not failures,
        f"800 moment checks at 4 standard errors, worst z={worst:.2f}, "
        f"{elapsed:.1f}s" + ("; " + "; ".join(failures[:4]) if failures else ""),
    )


def test_criterion_2_mean_identity():
    start = time.perf_counter()
    n_rep = 10_000
    sample = run_monte_carlo(16, n_rep, TWO_TERM, seed=SEED)
    mean = float(np.mean(sample.values))
    sd = float(np.std(sample.values, ddof=1))
    limit = 4.0 * sd / np.sqrt(n_rep)
    elapsed = time.perf_counter() - start
    _report(
        "criterion 2 (mean identity)",
        abs(mean) <= limit,
        f"sample mean {mean:+.5f} vs bound {limit:.5f} (4 sd/sqrt(N)), {elapsed:.1f}s",
    )


def test_criterion_3_clt_reproduction():
    start = time.perf_counter()
    n_rep = 50_000
    sample = run_monte_carlo(32, n_rep, TWO_TERM, seed=SEED)
    emp = EmpiricalDistribution.from_sample(sample)
    w1 = wasserstein1_to_gaussian(emp, GaussianSpec(0.0, 3.0))
    variance = emp.variance()
    var_se = variance * np.sqrt(2.0 / (n_rep - 1))
    elapsed = time.perf_counter() - start
    ok = w1 <= 0.05 and abs(variance - 3.0) <= 4.0 * var_se
    _report(
        "criterion 3 (Gaussian limit)",
        ok,
        f"W1={w1:.4f} (limit 0.05), variance={variance:.4f} vs 3 "
        f"(4 SE = {4*var_se:.4f}), {elapsed:.1f}s",
    )


def test_criterion_4_path_equivalence():
    start = time.perf_counter()
    f = power_decay(4.0)
    series = f.exact_series
    fhat0 = f.fhat0()
    n, d, n_rep = 32, 16, 1000
    diffs = np.empty(n_rep)
    for r in range(n_rep):
        m = haar_unitary(n, RngStream(SEED, r))
        eigen = fluctuation_eigen(m, f, fhat0)
        trace = fluctuation_trace(traces_of_powers(m, d), series, d)
        diffs[r] = eigen - trace
    rms = float(np.sqrt(np.mean(diffs**2)))
    bound = 2.0 * np.sqrt(truncation_tail_bound(4, f.derivative_norm, d)) + 1e-6 * n
    elapsed = time.perf_counter() - start
    _report(
        "criterion 4 (eigen/trace path equivalence)",
        rms <= bound,
        f"RMS difference {rms:.2e} vs tail bound {bound:.2e} "
        f"at n={n}, d={d}, {n_rep} replicas, {elapsed:.1f}s",
    )


def test_criterion_5_rate_trend():
    start = time.perf_counter()
    f = power_decay(4.0)
    sigma2 = sigma_squared(f.exact_series)
    n_rep = 50_000
    floor = noise_floor(np.sqrt(sigma2), n_rep)
    rows = []
    qualifying = []
    for n in (8, 16, 32, 64):
        sample = run_monte_carlo(n, n_rep, f, seed=SEED)
        emp = EmpiricalDistribution.from_sample(sample)
        w1 = wasserstein1_to_gaussian(emp, GaussianSpec(0.0, sigma2))
        qualifies = w1 > 5.0 * floor
        rows.append(f"n={n}: W1={w1:.4e} ({'above' if qualifies else 'below'} floor)")
        if qualifies:
            qualifying.append((n, w1))
    table = f"5x noise floor = {5*floor:.4e}; " + "; ".join(rows)
    elapsed = time.perf_counter() - start
    decreasing = all(b < a for (_, a), (_, b) in zip(qualifying, qualifying[1:]))
    if len(qualifying) >= 3:
        slope = rate_regression(qualifying).slope
        ok = decreasing and slope <= -0.2
        detail = f"fitted slope {slope:.3f} (need <= -0.2), {table}, {elapsed:.0f}s"
    else:
        ok = False
        detail = (
            f"only {len(qualifying)} of 4 distances exceed 5x the noise floor, "
            f"so no trend is measurable at this replica budget; {table}, {elapsed:.0f}s"
        )
    _report("criterion 5 (rate trend)", ok, detail)


def test_criterion_6_formula_suite():
    start = time.perf_counter()
    two_cos = trig_polynomial({1: 1.0}, identifier="2cos")
    checks = (
        ("theoretical_rate(2, 512)", theoretical_rate(2, 512), 0.25),
        ("trofpow_rate(4, 2, 10)", trofpow_rate(4, 2, 10), 0.4),
        ("truncation_tail_bound(2, 1, 10)", truncation_tail_bound(2, 1.0, 10), 0.01),
        ("sigma_squared(2cos x + cos 2x)", sigma_squared(TWO_TERM.exact_series), 3.0),
        ("phi_lipschitz_bound(2cos x, d=1)", phi_lipschitz_bound(two_cos.exact_series, 1), 2.0),
    )
    bad = [f"{name} = {got!r} != {want}" for name, got, want in checks if abs(got - want) > 1e-12]
    elapsed = time.perf_counter() - start
    _report(
        "criterion 6 (closed-form formulas)",
        not bad,
        f"5 identities to 1e-12, {elapsed*1e3:.0f}ms" + ("; " + "; ".join(bad) if bad else ""),
    )


def test_criterion_7_truncation_optimizer():
    start = time.perf_counter()
    mismatches = []
    for k in (2, 3, 4):
        for n in range(2, 201):
            best_d = min(
                range(1, n // 2 + 1), key=lambda d: (truncation_objective(d, k, n), d)
            )
            if optimal_truncation(k, n) != best_d:
                mismatches.append((k, n))
    elapsed = time.perf_counter() - start
    _report(
        "criterion 7 (truncation optimizer vs exhaustive search)",
        not mismatches,
        f"597 (k, n) grid points, {elapsed*1e3:.0f}ms"
        + (f"; first mismatches {mismatches[:3]}" if mismatches else ""),
    )


def test_criterion_8_sampler_properties():
    start = time.perf_counter()
    worst = {"unitarity": 0.0, "modulus": 0.0, "trace": 0.0, "det": 0.0}
    failures = []
    for n in (2, 8, 32):
        for r in range(500):
            m = haar_unitary(n, RngStream(SEED, r))
            eigvals = np.linalg.eigvals(m.matrix)
            phases = np.sort(np.angle(eigvals) % (2.0 * np.pi))
            t = traces_of_powers(m, 6)
            recon = np.exp(1j * np.outer(np.arange(1, 7), phases)).sum(axis=1)
            det = np.linalg.det(m.matrix)
            checks = (
                ("unitarity", m.defect, 1e-10 * n),
                ("modulus", float(np.max(np.abs(np.abs(eigvals) - 1.0))), 1e-8),
                ("trace", float(np.max(np.abs(recon - t.values))), 1e-8 * n),
                ("det", abs(np.exp(1j * phases.sum()) - det), 1e-7),
            )
            for name, value, tol in checks:
                worst[name] = max(worst[name], value / tol)
                if value > tol:
                    failures.append(f"n={n} replica {r} {name}: {value:.2e} > {tol:.2e}")
    elapsed = time.perf_counter() - start
    summary = ", ".join(f"{k} at {v:.1e} of tolerance" for k, v in worst.items())
    _report(
        "criterion 8 (sampler and eigensolver properties)",
        not failures,
        f"1500 samples: {summary}, {elapsed:.1f}s"
        + ("; " + "; ".join(failures[:3]) if failures else ""),
    )


def test_criterion_9_fourier_exactness():
    start = time.perf_counter()
    problems = []

    rich = trig_polynomial(
        {0: 0.75, 1: 1.0, 3: complex(-0.25, 0.5), 7: complex(0.0, -0.125)},
        identifier="rich-trig",
    )
    for f, tol in ((TWO_TERM, 1e-12), (rich, 1e-12)):
        series = f.exact_series
        computed = coefficients_by_quadrature(f, series.max_index, 64)
        err = float(np.max(np.abs(computed.coeffs - series.coeffs)))
        if err > tol:
            problems.append(f"{f.identifier} quadrature error {err:.2e} > {tol:.0e}")

    power3 = power_decay(3.0)
    computed = coefficients_by_quadrature(power3, 4096, 16384)
    err3 = float(np.max(np.abs(computed.coeffs - power3.exact_series.coeffs)))
    if err3 > 1e-10:
        problems.append(f"power kappa=3 quadrature error {err3:.2e} > 1e-10")

    from haarlab import geometric

    for f in (TWO_TERM, power3, power_decay(4.0), geometric(0.6)):
        series = f.exact_series
        k, norm = f.smoothness_k, f.derivative_norm
        j = np.arange(1, series.max_index + 1, dtype=float)
        slack = np.abs(series.coeffs[1:]) - norm / j**k
        if np.any(slack > 0.0):
            worst_j = int(np.argmax(slack)) + 1
            problems.append(f"{f.identifier}: decay bound violated at j={worst_j}")

    elapsed = time.perf_counter() - start
    _report(
        "criterion 9 (Fourier coefficient exactness)",
        not problems,
        f"quadrature to 1e-12 (trig) and 1e-10 (power), decay bounds over "
        f"built-ins, {elapsed:.1f}s" + ("; " + "; ".join(problems) if problems else ""),
    )
