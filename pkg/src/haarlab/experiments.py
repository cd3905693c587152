"""Experiment drivers: one reproducible study per claim about the model.

Each experiment turns a validated :class:`ExperimentConfig` into a flat
list of :class:`ResultRecord` rows, ready for the CSV/JSON serializers.
Values are pure functions of (seed, parameters); the wall_time_s field is
the only nondeterministic column and is excluded from reproducibility
comparisons.
"""

from __future__ import annotations

import json
import math
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from .config import ExperimentConfig
from .distances import noise_floor, wasserstein1_to_gaussian
from .fluctuations import (
    EmpiricalDistribution,
    GaussianSpec,
    orthogonality_table,
    run_monte_carlo,
)
from .fourier import (
    coefficient_decay_bound,
    estimate_decay,
    sigma_squared,
    sigma_truncated,
)
from .rates import (
    optimal_truncation,
    rate_regression,
    theoretical_rate,
    trofpow_rate,
    truncation_objective,
)
from .rng import RngStream
from .unitary import eigenphases, haar_unitary, traces_of_powers

__all__ = [
    "ExperimentError",
    "ResultRecord",
    "records_to_csv",
    "records_to_json",
    "run",
    "write_records",
]

#: Rate fits only use distances above this multiple of the noise floor.
NOISE_FLOOR_FACTOR = 5.0

#: Power range of the orthogonality moment table.
ORTHO_MAX_POWER = 10


class ExperimentError(RuntimeError):
    """An experiment could not produce its records."""


@dataclass(frozen=True)
class ResultRecord:
    """One measured or computed quantity, with its uncertainty.

    `error` is a standard error for Monte Carlo means, a noise floor for
    distance estimates, and 0 for exact formula evaluations. `n` is 0 for
    records that aggregate over sizes (for example a fitted slope).
    """

    experiment: str
    function_id: str
    n: int
    replicas: int
    seed: int
    method: str
    metric: str
    value: float
    error: float
    wall_time_s: float

    def __post_init__(self) -> None:
        for name in ("value", "error", "wall_time_s"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"record field {name} must be finite, got {getattr(self, name)}")


class _Recorder:
    """Collects records, stamping shared parameters and elapsed time."""

    def __init__(self, config: ExperimentConfig, function_id: str):
        self.config = config
        self.function_id = function_id
        self.records: list[ResultRecord] = []
        self._start = time.perf_counter()

    def add(self, metric: str, value: float, error: float = 0.0, n: int = 0) -> None:
        self.records.append(
            ResultRecord(
                experiment=self.config.experiment,
                function_id=self.function_id,
                n=n,
                replicas=self.config.replicas,
                seed=self.config.seed,
                method=self.config.method,
                metric=metric,
                value=float(value),
                error=float(error),
                wall_time_s=time.perf_counter() - self._start,
            )
        )


def _trace_cut(config: ExperimentConfig, n: int, k: int | None) -> int | None:
    """Resolve the truncation for one size: explicit d, or the optimizer."""
    if config.method != "trace":
        return None
    if config.truncation is not None:
        return config.truncation
    if k is not None and k >= 2:
        return optimal_truncation(k, n)
    return max(1, n // 2)


def _run_clt(config: ExperimentConfig, recorder: _Recorder, f) -> None:
    series = f.fourier_series()
    sigma2 = sigma_squared(series)
    recorder.add("sigma_squared_target", sigma2)
    try:
        k = f.smoothness_order()
    except ValueError:
        k = None
    for n in config.sizes:
        d = _trace_cut(config, n, k)
        sample = run_monte_carlo(
            n, config.replicas, f, method=config.method, d=d, seed=config.seed
        )
        emp = EmpiricalDistribution.from_sample(sample)
        n_rep = config.replicas
        mean = float(np.mean(sample.values))
        sd = float(np.std(sample.values, ddof=1)) if n_rep > 1 else 0.0
        variance = sd**2
        if config.method == "eigen":
            target = sigma2
        else:
            padded = series.padded(d)
            target = sigma_truncated(padded, d)
        recorder.add("sample_mean", mean, sd / np.sqrt(n_rep), n=n)
        recorder.add(
            "sample_variance", variance, variance * np.sqrt(2.0 / max(n_rep - 1, 1)), n=n
        )
        recorder.add("variance_target", target, n=n)
        w1 = wasserstein1_to_gaussian(emp, GaussianSpec(0.0, target))
        recorder.add(
            "w1_to_gaussian", w1, noise_floor(np.sqrt(target), n_rep), n=n
        )
        if d is not None:
            recorder.add("truncation_d", d, n=n)


def _run_rate(config: ExperimentConfig, recorder: _Recorder, f) -> None:
    series = f.fourier_series()
    sigma2 = sigma_squared(series)
    if sigma2 <= 0.0:
        raise ExperimentError("rate experiment needs a function with positive variance")
    try:
        k = f.smoothness_order()
    except ValueError:
        k = None
    if k is not None and k >= 2:
        recorder.add("theoretical_exponent", -(k - 1.0) / (k + 2.5))
    floor = noise_floor(np.sqrt(sigma2), config.replicas)
    qualifying = []
    for n in config.sizes:
        d = _trace_cut(config, n, k)
        sample = run_monte_carlo(
            n, config.replicas, f, method=config.method, d=d, seed=config.seed
        )
        emp = EmpiricalDistribution.from_sample(sample)
        w1 = wasserstein1_to_gaussian(emp, GaussianSpec(0.0, sigma2))
        recorder.add("w1_to_gaussian", w1, floor, n=n)
        qualifies = w1 > NOISE_FLOOR_FACTOR * floor
        recorder.add("above_noise_floor", 1.0 if qualifies else 0.0, n=n)
        if qualifies:
            qualifying.append((n, w1))
        if k is not None and k >= 2:
            recorder.add("predicted_rate", theoretical_rate(k, n), n=n)
    try:
        fit = rate_regression(qualifying)
    except ValueError as exc:
        measured = ", ".join(
            f"n={n}: {w1:.3e}" for n, w1 in
            [(r.n, r.value) for r in recorder.records if r.metric == "w1_to_gaussian"]
        )
        raise ExperimentError(
            f"rate fit impossible: only {len(qualifying)} of {len(config.sizes)} "
            f"distances exceed {NOISE_FLOOR_FACTOR}x the noise floor {floor:.3e} "
            f"({measured}); raise replicas or use larger sizes ({exc})"
        ) from exc
    recorder.add("fitted_slope", fit.slope, fit.stderr)
    recorder.add("fitted_intercept", fit.intercept)


def _run_ortho(config: ExperimentConfig, recorder: _Recorder) -> None:
    max_power = config.truncation if config.truncation is not None else ORTHO_MAX_POWER
    for n in config.sizes:
        table = orthogonality_table(n, max_power, config.replicas, config.seed)
        for (i, j), est in sorted(table.items()):
            tag = f"[{i},{j}]"
            recorder.add(f"plain_re{tag}", est.plain.real, est.plain_se[0], n=n)
            recorder.add(f"plain_im{tag}", est.plain.imag, est.plain_se[1], n=n)
            recorder.add(f"conjugated_re{tag}", est.conjugated.real, est.conjugated_se[0], n=n)
            recorder.add(f"conjugated_im{tag}", est.conjugated.imag, est.conjugated_se[1], n=n)
            recorder.add(f"conjugated_target{tag}", est.conjugated_target, n=n)


def _run_coeffs(config: ExperimentConfig, recorder: _Recorder, f) -> None:
    series = f.fourier_series()
    report_to = config.truncation if config.truncation is not None else 32
    report_to = min(report_to, series.max_index)
    k = f.smoothness_k
    norm = f.derivative_norm
    for j in range(1, report_to + 1):
        recorder.add(f"coeff_abs[{j}]", abs(series.coefficient(j)), n=0)
        if k is not None and norm is not None:
            recorder.add(f"decay_bound[{j}]", coefficient_decay_bound(k, norm, j), n=0)
    recorder.add("sigma_squared", sigma_squared(series))
    nonzero = int(np.count_nonzero(np.abs(series.coeffs[1:])))
    recorder.add("nonzero_coefficients", nonzero)
    if nonzero >= 5:
        fit = estimate_decay(series)
        recorder.add("kappa_hat", fit.kappa_hat, fit.fit_residual)
        recorder.add("c_kappa_hat", fit.c_kappa_hat)


def _run_truncation(config: ExperimentConfig, recorder: _Recorder, f) -> None:
    k = f.smoothness_order()
    if k < 2:
        raise ExperimentError(
            f"truncation optimization needs smoothness k >= 2, function has k={k}"
        )
    exponent = 2.0 / (5.0 + 2.0 * k)
    recorder.add("x0_exponent", exponent)
    for n in config.sizes:
        d = optimal_truncation(k, n)
        x0 = (2.0 * (k - 1.0) / 7.0) ** exponent * float(n) ** exponent
        recorder.add("optimal_d", d, n=n)
        recorder.add("x0", x0, n=n)
        recorder.add("objective_at_d", truncation_objective(d, k, n), n=n)
        if n >= 2 * d:
            recorder.add("trace_clt_rate", trofpow_rate(d, d, n), n=n)


def _run_sampler_check(config: ExperimentConfig, recorder: _Recorder) -> None:
    for n in config.sizes:
        max_defect = 0.0
        max_det_dev = 0.0
        max_modulus_dev = 0.0
        max_trace_gap = 0.0
        traces1 = np.empty(config.replicas, dtype=complex)
        d = min(6, 2 * n)
        for r in range(config.replicas):
            m = haar_unitary(n, RngStream(config.seed, r))
            max_defect = max(max_defect, m.defect)
            det = np.linalg.det(m.matrix)
            max_det_dev = max(max_det_dev, abs(abs(det) - 1.0))
            phases = eigenphases(m)
            t = traces_of_powers(m, d)
            traces1[r] = t.power(1)
            recon = np.exp(1j * np.outer(np.arange(1, d + 1), phases)).sum(axis=1)
            max_trace_gap = max(max_trace_gap, float(np.max(np.abs(recon - t.values))))
            max_modulus_dev = max(
                max_modulus_dev, float(np.max(np.abs(np.abs(np.exp(1j * phases)) - 1.0)))
            )
        recorder.add("max_unitarity_defect", max_defect, n=n)
        recorder.add("max_det_deviation", max_det_dev, n=n)
        recorder.add("max_eigen_modulus_deviation", max_modulus_dev, n=n)
        recorder.add("max_trace_eigenphase_gap", max_trace_gap, n=n)
        sq = np.abs(traces1) ** 2
        recorder.add(
            "mean_abs_trace_sq",
            float(np.mean(sq)),
            float(np.std(sq, ddof=1) / np.sqrt(config.replicas)),
            n=n,
        )
        recorder.add("abs_trace_sq_target", float(min(1, n)), n=n)
        for part, name in ((np.real, "re"), (np.imag, "im")):
            vals = part(traces1)
            recorder.add(
                f"mean_trace_{name}",
                float(np.mean(vals)),
                float(np.std(vals, ddof=1) / np.sqrt(config.replicas)),
                n=n,
            )


def run(config: ExperimentConfig) -> list[ResultRecord]:
    """Execute the configured experiment and return its records."""
    from .config import ConfigError

    problems = config.validate()
    if problems:
        raise ConfigError(problems)
    needs_function = config.experiment in ("clt", "rate", "coeffs", "truncation")
    f = config.function.build() if needs_function else None
    recorder = _Recorder(config, f.identifier if f is not None else "-")
    if config.experiment == "clt":
        _run_clt(config, recorder, f)
    elif config.experiment == "rate":
        _run_rate(config, recorder, f)
    elif config.experiment == "ortho":
        _run_ortho(config, recorder)
    elif config.experiment == "coeffs":
        _run_coeffs(config, recorder, f)
    elif config.experiment == "truncation":
        _run_truncation(config, recorder, f)
    else:
        _run_sampler_check(config, recorder)
    return recorder.records


_CSV_HEADER = "experiment,function,n,replicas,seed,method,metric,value,error,wall_time_s"


def records_to_csv(records: list[ResultRecord]) -> str:
    """CSV with a mandatory header; floats in full double precision."""
    lines = [_CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.experiment},{r.function_id},{r.n},{r.replicas},{r.seed},{r.method},"
            f"{r.metric},{r.value:.17e},{r.error:.17e},{r.wall_time_s:.17e}"
        )
    return "\n".join(lines) + "\n"


def records_to_json(records: list[ResultRecord]) -> str:
    payload = []
    for r in records:
        row = asdict(r)
        row["function"] = row.pop("function_id")
        payload.append(row)
    return json.dumps(payload, indent=2) + "\n"


def write_records(records: list[ResultRecord], output_path: str, format: str) -> None:
    """Serialize to `output_path`, or stdout when the path is empty."""
    text = records_to_csv(records) if format == "csv" else records_to_json(records)
    if not output_path:
        sys.stdout.write(text)
        return
    try:
        with open(output_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise ExperimentError(f"cannot write results to {output_path!r}: {exc}") from exc
