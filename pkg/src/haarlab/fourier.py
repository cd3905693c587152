"""Fourier coefficients of real functions on the circle, and the closed
forms built from them.

Conventions: for real-valued f on [0, 2*pi), the j-th coefficient is
fhat_j = (1/2*pi) * integral of f(x) exp(-i j x) dx. Reality of f forces
fhat_{-j} = conj(fhat_j), so a :class:`FourierSeries` stores only j >= 0
and the symmetry is structural rather than checked. L1 norms of
derivatives are taken with respect to normalized Lebesgue measure
dx / (2*pi), the convention under which |fhat_j| <= ||f^(k)||_1 / j^k for
f in C^k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DecayEstimate",
    "FourierSeries",
    "coefficient_decay_bound",
    "coefficients_by_quadrature",
    "estimate_decay",
    "phi_lipschitz_bound",
    "sigma_squared",
    "sigma_truncated",
    "truncation_tail_bound",
]

_FHAT0_IMAG_TOL = 1e-12


@dataclass(frozen=True)
class FourierSeries:
    """Coefficients fhat_0 .. fhat_J of a real function on the circle."""

    coeffs: np.ndarray  # complex, index j = 0..J

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficients must form a nonempty 1-d array")
        if not np.all(np.isfinite(coeffs.view(float))):
            raise ValueError("coefficients must be finite")
        if abs(coeffs[0].imag) > _FHAT0_IMAG_TOL:
            raise ValueError(
                f"fhat_0 of a real function must be real, got imaginary part {coeffs[0].imag:.3e}"
            )
        coeffs[0] = coeffs[0].real
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def max_index(self) -> int:
        return self.coeffs.size - 1

    @property
    def fhat0(self) -> float:
        return float(self.coeffs[0].real)

    def coefficient(self, j: int) -> complex:
        """fhat_j for any integer j; negative indices by conjugate symmetry."""
        if abs(j) > self.max_index:
            raise ValueError(f"index {j} outside stored range -{self.max_index}..{self.max_index}")
        value = complex(self.coeffs[abs(j)])
        return value.conjugate() if j < 0 else value

    def padded(self, max_index: int) -> "FourierSeries":
        """Extend with exact zeros up to `max_index` (no-op if already long enough)."""
        if max_index <= self.max_index:
            return self
        coeffs = np.zeros(max_index + 1, dtype=complex)
        coeffs[: self.coeffs.size] = self.coeffs
        return FourierSeries(coeffs)

    def partial_sum(self, x: np.ndarray | float) -> np.ndarray | float:
        """Evaluate fhat_0 + sum_{j=1..J} (fhat_j e^{ijx} + conj)."""
        x = np.asarray(x, dtype=float)
        j = np.arange(1, self.coeffs.size)
        phases = np.exp(1j * np.multiply.outer(x, j))
        return self.fhat0 + 2.0 * (phases @ self.coeffs[1:]).real

    def grid_values(self, grid_size: int) -> np.ndarray:
        """Partial sum on the uniform grid x_m = 2*pi*m/G, via inverse FFT."""
        if grid_size < 2 * self.max_index + 1:
            raise ValueError(
                f"grid of {grid_size} cannot carry harmonics up to {self.max_index}"
            )
        spectrum = np.zeros(grid_size, dtype=complex)
        spectrum[: self.coeffs.size] = self.coeffs
        if self.max_index >= 1:
            spectrum[-self.max_index:] = np.conj(self.coeffs[1:][::-1])
        return np.fft.ifft(spectrum).real * grid_size


@dataclass(frozen=True)
class DecayEstimate:
    """Fitted power law |fhat_j| <= c / j^kappa covering every fitted index."""

    kappa_hat: float
    c_kappa_hat: float
    fit_residual: float


def coefficients_by_quadrature(f, max_index: int, grid_size: int) -> FourierSeries:
    """Coefficients fhat_0..fhat_J of `f` from a power-of-two uniform grid.

    The discrete transform of G equispaced samples is exact for
    trigonometric polynomials of degree < G - J; beyond that regime the
    error is the usual aliasing fold-in. `f` may be a TestFunction or any
    callable accepting an array of angles.

    Raises on a grid that is not a power of two or that violates the
    Nyquist requirement G >= 2J + 1.
    """
    if max_index < 0:
        raise ValueError("max_index must be nonnegative")
    if grid_size < 1 or grid_size & (grid_size - 1) != 0:
        raise ValueError(f"grid size must be a power of two, got {grid_size}")
    if grid_size < 2 * max_index + 1:
        raise ValueError(
            f"grid size {grid_size} below Nyquist requirement {2 * max_index + 1} "
            f"for max index {max_index}"
        )
    evaluate = getattr(f, "evaluator", f)
    x = 2.0 * np.pi * np.arange(grid_size) / grid_size
    samples = np.asarray(evaluate(x), dtype=float)
    if samples.shape != x.shape:
        raise ValueError("evaluator must map an array of angles to an equal-length array")
    if not np.all(np.isfinite(samples)):
        raise ValueError("evaluator produced non-finite values")
    transform = np.fft.fft(samples) / grid_size
    coeffs = np.array(transform[: max_index + 1])
    coeffs[0] = coeffs[0].real
    return FourierSeries(coeffs)


def coefficient_decay_bound(k: int, derivative_norm: float, j: int) -> float:
    """Upper bound ||f^(k)||_1 / j^k on |fhat_j| for f in C^k, j != 0."""
    if k < 1:
        raise ValueError("smoothness order k must be >= 1")
    if j < 1:
        raise ValueError("the decay bound applies to indices j >= 1 only")
    if derivative_norm < 0:
        raise ValueError("derivative norm must be nonnegative")
    return derivative_norm / float(j) ** k


def sigma_squared(series: FourierSeries) -> float:
    """Limiting fluctuation variance 2 * sum_{j>=1} j |fhat_j|^2.

    The sum runs over the stored range; callers that need tail control
    combine this with :func:`truncation_tail_bound`.
    """
    return sigma_truncated(series, series.max_index) if series.max_index >= 1 else 0.0


def sigma_truncated(series: FourierSeries, d: int) -> float:
    """Truncated variance 2 * sum_{j=1..d} j |fhat_j|^2."""
    if not 0 <= d <= series.max_index:
        raise ValueError(f"truncation {d} outside the stored range 0..{series.max_index}")
    if d == 0:
        return 0.0
    j = np.arange(1, d + 1)
    return float(2.0 * np.sum(j * np.abs(series.coeffs[1 : d + 1]) ** 2))


def truncation_tail_bound(k: int, derivative_norm: float, d: int) -> float:
    """Bound 2 ||f^(k)||_1^2 / ((2k-2) d^(2k-2)) on the discarded-tail
    second moment of the fluctuation, valid for k >= 2."""
    if k < 2:
        raise ValueError("the tail bound requires smoothness order k >= 2")
    if d < 1:
        raise ValueError("truncation index must be >= 1")
    if derivative_norm < 0:
        raise ValueError("derivative norm must be nonnegative")
    return 2.0 * derivative_norm**2 / ((2 * k - 2) * float(d) ** (2 * k - 2))


def phi_lipschitz_bound(series: FourierSeries, d: int) -> float:
    """Lipschitz bound 2 * sqrt(sum_{j=1..d} |fhat_j|^2) of the linear map
    sending the first d traces to the truncated fluctuation."""
    if not 1 <= d <= series.max_index:
        raise ValueError(f"truncation {d} outside the stored range 1..{series.max_index}")
    return float(2.0 * np.sqrt(np.sum(np.abs(series.coeffs[1 : d + 1]) ** 2)))


def estimate_decay(series: FourierSeries, j_min: int = 1) -> DecayEstimate:
    """Least-squares power-law fit of the coefficient decay.

    Fits log|fhat_j| = log c - kappa log j over the nonzero coefficients
    with index >= j_min, then inflates c minimally so the fitted bound
    holds at every fitted index. Needs at least 5 usable coefficients.
    """
    if j_min < 1:
        raise ValueError("j_min must be >= 1")
    j = np.arange(j_min, series.max_index + 1)
    magnitudes = np.abs(series.coeffs[j_min:])
    usable = magnitudes > 0.0
    j, magnitudes = j[usable], magnitudes[usable]
    if j.size < 5:
        raise ValueError(
            f"need at least 5 nonzero coefficients with index >= {j_min}, found {j.size}"
        )
    log_j = np.log(j.astype(float))
    log_mag = np.log(magnitudes)
    slope, intercept = np.polyfit(log_j, log_mag, 1)
    kappa_hat = -float(slope)
    residuals = log_mag - (slope * log_j + intercept)
    fit_residual = float(np.sqrt(np.mean(residuals**2)))
    # smallest c such that |fhat_j| <= c / j^kappa_hat on the fitted range
    c_hat = float(np.max(magnitudes * j.astype(float) ** kappa_hat))
    return DecayEstimate(kappa_hat=kappa_hat, c_kappa_hat=c_hat, fit_residual=fit_residual)
