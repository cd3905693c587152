"""haarlab: a simulation laboratory for the Gaussian fluctuations of
linear eigenvalue statistics of Haar-distributed unitary matrices.

The package samples Haar unitaries, computes fluctuation statistics by
two independent spectral paths, estimates Wasserstein distances to the
Gaussian limit, and evaluates the closed-form variance, tail-bound, and
convergence-rate formulas that describe the limit theorem quantitatively.
"""

from .distances import noise_floor, wasserstein1_empirical, wasserstein1_to_gaussian
from .fluctuations import (
    EmpiricalDistribution,
    FluctuationSample,
    GaussianSpec,
    OrthogonalityEstimate,
    fluctuation_eigen,
    fluctuation_trace,
    orthogonality_estimate,
    orthogonality_table,
    run_monte_carlo,
    sample_phi_gaussian,
)
from .fourier import (
    DecayEstimate,
    FourierSeries,
    coefficient_decay_bound,
    coefficients_by_quadrature,
    estimate_decay,
    phi_lipschitz_bound,
    sigma_squared,
    sigma_truncated,
    truncation_tail_bound,
)
from .functions import TestFunction, geometric, power_decay, trig_polynomial
from .rates import (
    RateFit,
    optimal_truncation,
    rate_regression,
    theoretical_rate,
    trofpow_rate,
    truncation_objective,
)
from .rng import RngStream
from .unitary import (
    EigenSolverError,
    TraceVector,
    UnitaryMatrix,
    eigenphases,
    haar_unitary,
    sample_ginibre,
    traces_of_powers,
    unitarity_defect,
)

__version__ = "0.1.0"

__all__ = [
    "DecayEstimate",
    "EigenSolverError",
    "EmpiricalDistribution",
    "FluctuationSample",
    "FourierSeries",
    "GaussianSpec",
    "OrthogonalityEstimate",
    "RateFit",
    "RngStream",
    "TestFunction",
    "TraceVector",
    "UnitaryMatrix",
    "coefficient_decay_bound",
    "coefficients_by_quadrature",
    "eigenphases",
    "estimate_decay",
    "fluctuation_eigen",
    "fluctuation_trace",
    "geometric",
    "haar_unitary",
    "noise_floor",
    "optimal_truncation",
    "orthogonality_estimate",
    "orthogonality_table",
    "phi_lipschitz_bound",
    "power_decay",
    "rate_regression",
    "run_monte_carlo",
    "sample_ginibre",
    "sample_phi_gaussian",
    "sigma_squared",
    "sigma_truncated",
    "theoretical_rate",
    "traces_of_powers",
    "trig_polynomial",
    "trofpow_rate",
    "truncation_objective",
    "truncation_tail_bound",
    "unitarity_defect",
    "wasserstein1_empirical",
    "wasserstein1_to_gaussian",
]
