"""Test functions on the circle, bundled with their Fourier metadata.

A :class:`TestFunction` pairs a vectorized evaluator with whatever exact
information is available about it: its Fourier series, a smoothness order
k with the norm of the k-th derivative, or a coefficient decay bound
(kappa, C_kappa). Construction cross-checks the pieces against each other,
so a function object that exists is internally consistent.

Three built-in families cover the interesting decay regimes: trigonometric
polynomials (series terminates), the power-decay family
sum_{j<=J} j^(-kappa) cos(jx + phi_j) (polynomial decay, exactly at rate
kappa), and the analytic family Re(1/(1 - rho*e^(ix))) (geometric decay).
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .fourier import FourierSeries, coefficients_by_quadrature

__all__ = [
    "TestFunction",
    "geometric",
    "power_decay",
    "trig_polynomial",
]

_PERIODICITY_TOL = 1e-12
_SERIES_MATCH_TOL = 1e-8
_VALIDATION_GRID = 4096
#: Fine grid for sup-norm and derivative-norm quadrature.
_QUADRATURE_GRID = 32768
#: Safety inflation on quadrature-derived norms; consumers only need upper bounds.
_NORM_INFLATION = 1.1
#: Safety inflation on the grid-sampled sup norm (true peaks can sit between nodes).
_SUP_INFLATION = 1.05
#: Default series length used when a function is not a trigonometric polynomial.
DEFAULT_MAX_INDEX = 4096


def _next_pow2(m: int) -> int:
    g = 1
    while g < m:
        g *= 2
    return g


def _series_on_uniform_grid(series: FourierSeries, grid_size: int) -> np.ndarray:
    """Partial sum at x_m = 2*pi*m/grid_size, for power-of-two grid sizes.

    Uses an FFT grid large enough to hold every harmonic and subsamples it,
    so arbitrarily long series stay cheap.
    """
    big = _next_pow2(max(grid_size, 2 * series.max_index + 1))
    values = series.grid_values(big)
    return values[:: big // grid_size]


@dataclass(frozen=True, eq=False)
class TestFunction:
    """A real 2*pi-periodic function plus optional exact Fourier metadata.

    `decay` is a pair (kappa, c) asserting |fhat_j| <= c / j^kappa for all
    j >= 1; `smoothness_k` and `derivative_norm` assert membership in C^k
    with the stated L1 norm of the k-th derivative (normalized Lebesgue
    measure). When `smoothness_k` is given without a norm, the norm is
    computed by spectral differentiation and quadrature, inflated 10%.
    """

    __test__ = False  # the name looks like a pytest fixture class; it is not

    identifier: str
    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    exact_series: FourierSeries | None = None
    smoothness_k: int | None = None
    derivative_norm: float | None = None
    decay: tuple[float, float] | None = None
    sup_abs: float = field(init=False)

    def __post_init__(self) -> None:
        if not isinstance(self.identifier, str) or not self.identifier:
            raise ValueError("identifier must be a nonempty string")
        if not callable(self.evaluator):
            raise ValueError("evaluator must be callable")
        self._check_periodicity()
        samples = self._validation_samples()
        if self.exact_series is not None:
            self._check_series_consistency(samples)
        self._check_smoothness_metadata()
        self._check_decay_metadata()
        object.__setattr__(self, "sup_abs", self._estimate_sup())

    def __call__(self, x):
        return self.evaluator(x)

    # -- validation pieces ------------------------------------------------

    def _check_periodicity(self) -> None:
        ends = np.asarray(self.evaluator(np.array([0.0, 2.0 * np.pi])), dtype=float)
        gap = abs(float(ends[0]) - float(ends[1]))
        if gap > _PERIODICITY_TOL:
            raise ValueError(
                f"evaluator is not 2*pi-periodic: |f(0) - f(2*pi)| = {gap:.3e}"
            )

    def _validation_samples(self) -> np.ndarray:
        x = 2.0 * np.pi * np.arange(_VALIDATION_GRID) / _VALIDATION_GRID
        samples = np.asarray(self.evaluator(x), dtype=float)
        if samples.shape != x.shape:
            raise ValueError("evaluator must be vectorized over an array of angles")
        if not np.all(np.isfinite(samples)):
            raise ValueError("evaluator produced non-finite values")
        return samples

    def _check_series_consistency(self, samples: np.ndarray) -> None:
        expected = _series_on_uniform_grid(self.exact_series, _VALIDATION_GRID)
        gap = float(np.max(np.abs(samples - expected)))
        if gap > _SERIES_MATCH_TOL:
            raise ValueError(
                f"evaluator disagrees with its series by {gap:.3e} on the validation grid"
            )

    def _check_smoothness_metadata(self) -> None:
        if self.smoothness_k is None:
            if self.derivative_norm is not None:
                raise ValueError("derivative_norm requires smoothness_k")
            return
        k = self.smoothness_k
        if not isinstance(k, (int, np.integer)) or k < 1:
            raise ValueError(f"smoothness_k must be a positive integer, got {k}")
        if self.derivative_norm is None:
            computed = self._derivative_norm_by_quadrature(int(k))
            object.__setattr__(self, "derivative_norm", computed)
        elif not self.derivative_norm >= 0.0:
            raise ValueError(f"derivative_norm must be nonnegative, got {self.derivative_norm}")

    def _check_decay_metadata(self) -> None:
        if self.decay is None:
            return
        kappa, c = float(self.decay[0]), float(self.decay[1])
        if not kappa > 1.0:
            raise ValueError(f"decay exponent must exceed 1, got {kappa}")
        if not c > 0.0:
            raise ValueError(f"decay constant must be positive, got {c}")
        object.__setattr__(self, "decay", (kappa, c))
        if self.exact_series is not None and self.exact_series.max_index >= 1:
            j = np.arange(1, self.exact_series.max_index + 1, dtype=float)
            magnitudes = np.abs(self.exact_series.coeffs[1:])
            bounds = c / j**kappa
            bad = magnitudes > bounds * (1.0 + 1e-12) + 1e-300
            if np.any(bad):
                worst = int(np.argmax(magnitudes - bounds))
                raise ValueError(
                    f"coefficient {worst + 1} violates the declared decay bound: "
                    f"|fhat| = {magnitudes[worst]:.6e} > {bounds[worst]:.6e}"
                )

    # -- derived quantities -----------------------------------------------

    def _estimate_sup(self) -> float:
        if self.exact_series is not None:
            values = _series_on_uniform_grid(self.exact_series, _QUADRATURE_GRID)
        else:
            x = 2.0 * np.pi * np.arange(_QUADRATURE_GRID) / _QUADRATURE_GRID
            values = np.asarray(self.evaluator(x), dtype=float)
        return float(np.max(np.abs(values))) * _SUP_INFLATION + 1e-12

    def _derivative_norm_by_quadrature(self, k: int) -> float:
        """Normalized L1 norm of f^(k), via spectral differentiation.

        With an exact series the k-th derivative is itself an exact
        trigonometric polynomial; otherwise the evaluator's samples are
        differentiated in Fourier space. Either way the quadrature is a
        uniform-grid mean, and the result is inflated 10% since consumers
        treat it as an upper bound.
        """
        if self.exact_series is not None:
            series = self.exact_series
            j = np.arange(series.coeffs.size, dtype=float)
            dk = series.coeffs * (1j * j) ** k
            dk[0] = 0.0
            derivative = FourierSeries(dk)
            values = _series_on_uniform_grid(derivative, _QUADRATURE_GRID)
        else:
            g = _VALIDATION_GRID
            spectrum = np.fft.fft(self._validation_samples())
            freq = np.fft.fftfreq(g, d=1.0 / g)
            multiplier = (1j * freq) ** k
            if k % 2 == 1:
                multiplier[g // 2] = 0.0  # unpaired Nyquist mode has no odd derivative
            values = np.fft.ifft(spectrum * multiplier).real
        return float(np.mean(np.abs(values))) * _NORM_INFLATION

    def fourier_series(self, max_index: int = DEFAULT_MAX_INDEX) -> FourierSeries:
        """The exact series when known, else quadrature coefficients.

        The quadrature fallback uses an 8x-oversampled power-of-two grid
        and is cached per max_index.
        """
        if self.exact_series is not None:
            return self.exact_series
        cache = self.__dict__.setdefault("_series_cache", {})
        if max_index not in cache:
            grid = _next_pow2(8 * max(max_index, 1))
            cache[max_index] = coefficients_by_quadrature(self.evaluator, max_index, grid)
        return cache[max_index]

    def fhat0(self) -> float:
        if self.exact_series is not None:
            return self.exact_series.fhat0
        return float(np.mean(self._validation_samples()))

    def smoothness_order(self) -> int:
        """The k used by rate formulas: metadata k, else floor(kappa)."""
        if self.smoothness_k is not None:
            return int(self.smoothness_k)
        if self.decay is not None:
            return int(math.floor(self.decay[0]))
        raise ValueError(
            f"function {self.identifier!r} carries neither smoothness nor decay metadata"
        )


# -- built-in families ----------------------------------------------------


def _as_series(coefficients) -> FourierSeries:
    if isinstance(coefficients, FourierSeries):
        return coefficients
    if isinstance(coefficients, Mapping):
        if not coefficients:
            raise ValueError("coefficient mapping must be nonempty")
        top = max(int(j) for j in coefficients)
        if min(int(j) for j in coefficients) < 0:
            raise ValueError("coefficient indices must be nonnegative (j >= 0)")
        coeffs = np.zeros(top + 1, dtype=complex)
        for j, value in coefficients.items():
            coeffs[int(j)] = value
        return FourierSeries(coeffs)
    return FourierSeries(np.asarray(coefficients, dtype=complex))


def trig_polynomial(
    coefficients,
    *,
    identifier: str = "trig-poly",
    smoothness_k: int = 2,
) -> TestFunction:
    """Trigonometric polynomial with the given coefficients fhat_0..fhat_J.

    `coefficients` may be a FourierSeries, a dense array of fhat_0..fhat_J,
    or a mapping {j: fhat_j} with missing indices zero. Any smoothness
    order is legitimate for a trigonometric polynomial; `smoothness_k`
    picks the one whose derivative norm is attached.
    """
    series = _as_series(coefficients)

    def evaluate(x):
        return series.partial_sum(x)

    return TestFunction(
        identifier=identifier,
        evaluator=evaluate,
        exact_series=series,
        smoothness_k=smoothness_k,
    )


def _cosine_sum_evaluator(amplitudes: np.ndarray, phases: np.ndarray):
    j = np.arange(1, amplitudes.size + 1, dtype=float)
    # cap the angle-by-harmonic work matrix at ~4e6 entries
    block = max(1, 4_000_000 // amplitudes.size)

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        flat = np.ravel(x)
        out = np.empty(flat.size)
        for start in range(0, flat.size, block):
            angles = flat[start : start + block]
            out[start : start + block] = (
                np.cos(np.multiply.outer(angles, j) + phases) @ amplitudes
            )
        return out.reshape(x.shape) if x.ndim else float(out[0])

    return evaluate


def power_decay(
    kappa: float,
    *,
    max_index: int = DEFAULT_MAX_INDEX,
    phases=None,
    identifier: str | None = None,
) -> TestFunction:
    """f(x) = sum_{j=1..J} j^(-kappa) cos(jx + phi_j), exact coefficients.

    The j-th coefficient is e^(i phi_j) j^(-kappa) / 2, so the decay
    condition holds with constant exactly 1/2 at exponent kappa. Phases
    default to zero (an even function).
    """
    if not kappa > 1.0:
        raise ValueError(f"kappa must exceed 1 for a summable series, got {kappa}")
    if max_index < 1:
        raise ValueError("the family needs at least one term")
    if phases is None:
        phases = np.zeros(max_index)
    else:
        phases = np.asarray(phases, dtype=float)
        if phases.shape != (max_index,):
            raise ValueError(f"expected {max_index} phases, got shape {phases.shape}")
    j = np.arange(1, max_index + 1, dtype=float)
    amplitudes = j**-float(kappa)
    coeffs = np.zeros(max_index + 1, dtype=complex)
    coeffs[1:] = 0.5 * amplitudes * np.exp(1j * phases)
    return TestFunction(
        identifier=identifier or f"power-decay-{kappa:g}",
        evaluator=_cosine_sum_evaluator(amplitudes, phases),
        exact_series=FourierSeries(coeffs),
        smoothness_k=max(1, int(math.floor(kappa))),
        decay=(float(kappa), 0.5),
    )


def geometric(
    rho: float,
    *,
    identifier: str | None = None,
    smoothness_k: int = 2,
) -> TestFunction:
    """f(x) = Re(1/(1 - rho e^(ix))): analytic, fhat_0 = 1, fhat_j = rho^j/2.

    The stored series is truncated where its sup-norm tail drops below
    1e-9, far inside the evaluator-consistency tolerance.
    """
    rho = float(rho)
    if not 0.0 < rho <= 0.999:
        raise ValueError(f"rho must lie in (0, 0.999], got {rho}")
    max_index = max(8, math.ceil(math.log(1e-9 * (1.0 - rho)) / math.log(rho)))
    j = np.arange(max_index + 1, dtype=float)
    coeffs = np.asarray(0.5 * rho**j, dtype=complex)
    coeffs[0] = 1.0

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        values = (1.0 / (1.0 - rho * np.exp(1j * x))).real
        return values if x.ndim else float(values)

    return TestFunction(
        identifier=identifier or f"geometric-{rho:g}",
        evaluator=evaluate,
        exact_series=FourierSeries(coeffs),
        smoothness_k=smoothness_k,
    )
