"""Fluctuations of linear eigenvalue statistics, by two independent paths.

The centered statistic S_n = sum_l f(theta_l) - n*fhat_0 can be computed
from the eigenphases directly (eigen path) or from the truncated Fourier
expansion 2*sum_{j<=d} Re(fhat_j Tr(M^j)) (trace path). The two paths
share no spectral code, so their agreement is a meaningful cross-check,
bounded by the tail of the Fourier series.

Monte Carlo ensembles draw replica i from RngStream(seed, i), which makes
every sample a pure function of (seed, parameters) no matter how the work
is scheduled. Aggregation is in replica order, so the optional process
pool (HAARLAB_WORKERS) changes wall time only, never results.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .fourier import FourierSeries
from .functions import TestFunction
from .rng import RngStream
from .unitary import UnitaryMatrix, eigenphases, haar_unitary, traces_of_powers

__all__ = [
    "EmpiricalDistribution",
    "FluctuationSample",
    "GaussianSpec",
    "OrthogonalityEstimate",
    "fluctuation_eigen",
    "fluctuation_trace",
    "orthogonality_estimate",
    "orthogonality_table",
    "run_monte_carlo",
    "sample_phi_gaussian",
]

_METHODS = ("eigen", "trace")
WORKERS_ENV_VAR = "HAARLAB_WORKERS"


@dataclass(frozen=True)
class FluctuationSample:
    """N Monte Carlo realizations of the fluctuation at one matrix size.

    When `amplitude_bound` is set (run_monte_carlo always sets it), every
    value is checked against the crude almost-sure bound
    2*n*sup|f| + |n*fhat_0|.
    """

    n: int
    replicas: int
    function_id: str
    method: str
    values: np.ndarray
    seed: int
    truncation_d: int | None = None
    amplitude_bound: float | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"matrix size must be >= 1, got {self.n}")
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {self.method!r}")
        if self.method == "trace":
            if self.truncation_d is None or self.truncation_d < 1:
                raise ValueError("trace method requires a positive truncation_d")
        elif self.truncation_d is not None:
            raise ValueError("truncation_d only applies to the trace method")
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.ndim != 1:
            raise ValueError("values must form a 1-d array")
        if values.size != self.replicas:
            raise ValueError(
                f"replica count {self.replicas} does not match {values.size} values"
            )
        if values.size and not np.all(np.isfinite(values)):
            raise ValueError("fluctuation values must be finite")
        if self.amplitude_bound is not None and values.size:
            worst = float(np.max(np.abs(values)))
            if worst > self.amplitude_bound:
                raise ValueError(
                    f"|fluctuation| = {worst:.6e} exceeds the almost-sure bound "
                    f"{self.amplitude_bound:.6e}"
                )


@dataclass(frozen=True)
class EmpiricalDistribution:
    """A sorted sample, standing in for the law it was drawn from."""

    sorted_values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.sorted_values, dtype=float)
        if values.ndim != 1:
            raise ValueError("sample must form a 1-d array")
        if values.size == 0:
            raise ValueError("empirical distribution needs at least one value")
        if not np.all(np.isfinite(values)):
            raise ValueError("sample values must be finite")
        values.sort()
        values.setflags(write=False)
        object.__setattr__(self, "sorted_values", values)

    @classmethod
    def from_sample(cls, sample: FluctuationSample) -> "EmpiricalDistribution":
        return cls(sample.values)

    @property
    def count(self) -> int:
        return self.sorted_values.size

    def variance(self, ddof: int = 1) -> float:
        if self.count < 2:
            raise ValueError("variance needs at least 2 observations")
        return float(np.var(self.sorted_values, ddof=ddof))


@dataclass(frozen=True)
class GaussianSpec:
    """Parameters of the comparison Gaussian N(mean, variance)."""

    mean: float = 0.0
    variance: float = 1.0

    def __post_init__(self) -> None:
        if not np.isfinite(self.mean) or not np.isfinite(self.variance):
            raise ValueError("Gaussian parameters must be finite")
        if self.variance < 0.0:
            raise ValueError(f"variance must be nonnegative, got {self.variance}")

    @property
    def sigma(self) -> float:
        return float(np.sqrt(self.variance))


def fluctuation_eigen(m: UnitaryMatrix, f: TestFunction, fhat0: float) -> float:
    """sum_l f(theta_l) - n*fhat0 over the eigenphases of M."""
    phases = eigenphases(m)
    return float(np.sum(np.asarray(f.evaluator(phases), dtype=float)) - m.dim * fhat0)


def fluctuation_trace(traces, series: FourierSeries, d: int) -> float:
    """Truncated expansion 2*sum_{j=1..d} Re(fhat_j * Tr(M^j)).

    The conjugate pair structure makes this exactly real; no imaginary
    residue is computed and discarded.
    """
    if d < 1:
        raise ValueError(f"truncation must be >= 1, got {d}")
    if d > traces.max_power:
        raise ValueError(f"truncation {d} exceeds stored trace range {traces.max_power}")
    if d > series.max_index:
        raise ValueError(f"truncation {d} exceeds series range {series.max_index}")
    return float(2.0 * np.real(np.dot(series.coeffs[1 : d + 1], traces.values[:d])))


def _replica_batch(
    n: int,
    f: TestFunction,
    method: str,
    d: int | None,
    fhat0: float,
    series: FourierSeries | None,
    seed: int,
    start: int,
    stop: int,
) -> np.ndarray:
    out = np.empty(stop - start)
    for i in range(start, stop):
        stream = RngStream(seed, i)
        try:
            m = haar_unitary(n, stream)
            if method == "eigen":
                out[i - start] = fluctuation_eigen(m, f, fhat0)
            else:
                out[i - start] = fluctuation_trace(traces_of_powers(m, d), series, d)
        except Exception as exc:
            raise type(exc)(f"replica {i}: {exc}") from exc
    return out


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR, "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV_VAR} must be an integer, got {raw!r}") from None
    return max(1, workers)


def run_monte_carlo(
    n: int,
    replicas: int,
    f: TestFunction,
    method: str = "eigen",
    d: int | None = None,
    seed: int = 0,
) -> FluctuationSample:
    """Sample the fluctuation over `replicas` independent Haar matrices.

    Replica i draws from RngStream(seed, i); the result is deterministic
    in (seed, parameters) and independent of the worker count. The trace
    method requires d <= n/2, the regime where the trace vector's joint
    CLT applies; d defaults to the largest admissible cut.
    """
    if n < 1:
        raise ValueError(f"matrix size must be >= 1, got {n}")
    if replicas < 0:
        raise ValueError(f"replica count must be >= 0, got {replicas}")
    if method not in _METHODS:
        raise ValueError(f"method must be one of {_METHODS}, got {method!r}")

    series: FourierSeries | None = None
    if method == "trace":
        series = f.fourier_series()
        if d is None:
            if n < 2:
                raise ValueError("trace method needs n >= 2 (the cut must satisfy n >= 2d)")
            d = max(1, min(n // 2, series.max_index))
        if d < 1:
            raise ValueError(f"truncation must be >= 1, got {d}")
        if 2 * d > n:
            raise ValueError(
                f"truncation d={d} violates n >= 2d at n={n}; the trace-vector CLT "
                f"regime requires d <= n/2"
            )
        series = series.padded(d)
        fhat0 = series.fhat0
    else:
        if d is not None:
            raise ValueError("the eigen path does not truncate; d only applies to trace")
        fhat0 = f.fhat0()

    bound = 2.0 * n * f.sup_abs + abs(n * fhat0) + 1e-9
    workers = _worker_count()
    if replicas == 0:
        values = np.empty(0)
    elif workers == 1 or replicas < 4 * workers:
        values = _replica_batch(n, f, method, d, fhat0, series, seed, 0, replicas)
    else:
        from joblib import Parallel, delayed

        edges = np.linspace(0, replicas, 4 * workers + 1).astype(int)
        batches = Parallel(n_jobs=workers)(
            delayed(_replica_batch)(n, f, method, d, fhat0, series, seed, int(a), int(b))
            for a, b in zip(edges[:-1], edges[1:])
            if b > a
        )
        values = np.concatenate(batches)

    return FluctuationSample(
        n=n,
        replicas=replicas,
        function_id=f.identifier,
        method=method,
        values=values,
        seed=seed,
        truncation_d=d if method == "trace" else None,
        amplitude_bound=bound,
    )


def sample_phi_gaussian(
    series: FourierSeries, d: int, replicas: int, seed: int
) -> EmpiricalDistribution:
    """Draw the Gaussian image phi(Z_Sigma) of the truncated expansion.

    phi maps the limiting trace vector Z to
    2*sum_{j<=d} sqrt(j)*(Re(fhat_j) X_j - Im(fhat_j) Y_j) with X_j, Y_j
    independent N(0, 1/2); its variance is sigma_truncated(series, d).
    """
    if not 1 <= d <= series.max_index:
        raise ValueError(f"truncation {d} outside the series range 1..{series.max_index}")
    if replicas < 0:
        raise ValueError(f"replica count must be >= 0, got {replicas}")
    rng = RngStream(seed).generator()
    scale = np.sqrt(0.5)
    x = rng.normal(scale=scale, size=(replicas, d))
    y = rng.normal(scale=scale, size=(replicas, d))
    root_j = np.sqrt(np.arange(1, d + 1, dtype=float))
    coeffs = series.coeffs[1 : d + 1]
    values = 2.0 * (x @ (root_j * coeffs.real) - y @ (root_j * coeffs.imag))
    return EmpiricalDistribution(values)


@dataclass(frozen=True)
class OrthogonalityEstimate:
    """Monte Carlo moments of a trace pair against their exact targets.

    plain estimates E[Tr(M^i) Tr(M^j)] (target 0); conjugated estimates
    E[Tr(M^i) conj(Tr(M^j))] (target delta_ij * min(j, n)). Standard
    errors are per real component.
    """

    n: int
    i: int
    j: int
    replicas: int
    plain: complex
    plain_se: tuple[float, float]
    conjugated: complex
    conjugated_se: tuple[float, float]

    @property
    def conjugated_target(self) -> float:
        return float(min(self.j, self.n)) if self.i == self.j else 0.0


def orthogonality_table(
    n: int, max_power: int, replicas: int, seed: int
) -> dict[tuple[int, int], OrthogonalityEstimate]:
    """Estimates for every pair 1 <= i, j <= max_power from one ensemble.

    Replica r draws from RngStream(seed, r), so the entry at (i, j) is
    bitwise identical to orthogonality_estimate(n, i, j, replicas, seed)
    whenever max(i, j) <= max_power.
    """
    if n < 1 or max_power < 1:
        raise ValueError("matrix size and max power must be >= 1")
    if replicas < 2:
        raise ValueError("standard errors need at least 2 replicas")
    d = max_power
    sum_plain = np.zeros((d, d), dtype=complex)
    sumsq_plain_re = np.zeros((d, d))
    sumsq_plain_im = np.zeros((d, d))
    sum_conj = np.zeros((d, d), dtype=complex)
    sumsq_conj_re = np.zeros((d, d))
    sumsq_conj_im = np.zeros((d, d))
    for r in range(replicas):
        t = traces_of_powers(haar_unitary(n, RngStream(seed, r)), d).values
        plain = np.outer(t, t)
        conj = np.outer(t, t.conj())
        sum_plain += plain
        sumsq_plain_re += plain.real**2
        sumsq_plain_im += plain.imag**2
        sum_conj += conj
        sumsq_conj_re += conj.real**2
        sumsq_conj_im += conj.imag**2

    def component_se(sums: np.ndarray, sumsq: np.ndarray) -> np.ndarray:
        var = (sumsq - sums**2 / replicas) / (replicas - 1)
        return np.sqrt(np.maximum(var, 0.0) / replicas)

    se_plain_re = component_se(sum_plain.real, sumsq_plain_re)
    se_plain_im = component_se(sum_plain.imag, sumsq_plain_im)
    se_conj_re = component_se(sum_conj.real, sumsq_conj_re)
    se_conj_im = component_se(sum_conj.imag, sumsq_conj_im)
    mean_plain = sum_plain / replicas
    mean_conj = sum_conj / replicas

    table = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            a, b = i - 1, j - 1
            table[(i, j)] = OrthogonalityEstimate(
                n=n,
                i=i,
                j=j,
                replicas=replicas,
                plain=complex(mean_plain[a, b]),
                plain_se=(float(se_plain_re[a, b]), float(se_plain_im[a, b])),
                conjugated=complex(mean_conj[a, b]),
                conjugated_se=(float(se_conj_re[a, b]), float(se_conj_im[a, b])),
            )
    return table


def orthogonality_estimate(
    n: int, i: int, j: int, replicas: int, seed: int
) -> OrthogonalityEstimate:
    """Monte Carlo means of Tr(M^i)Tr(M^j) and Tr(M^i)conj(Tr(M^j))."""
    if i < 1 or j < 1:
        raise ValueError("trace powers must be >= 1")
    return orthogonality_table(n, max(i, j), replicas, seed)[(i, j)]
