"""Haar-distributed unitary matrices and their spectral statistics.

Sampling uses the Ginibre + QR construction: draw an n x n matrix of iid
complex Gaussians, QR-factor it, and absorb the phases of diag(R) into Q.
Without the phase correction the QR factorization is not Haar distributed;
with it, Q * diag(R_jj/|R_jj|) is exactly Haar on U(n).

Two independent routes to the spectral data are kept deliberately separate
so each can serve as the other's cross-check: traces of powers are
accumulated by repeated matrix multiplication, while eigenphases come from
a dense eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .rng import RngStream

__all__ = [
    "EigenSolverError",
    "TraceVector",
    "UnitaryMatrix",
    "eigenphases",
    "haar_unitary",
    "sample_ginibre",
]

#: Frobenius defect allowed in ||M M^dag - I||_F, per unit of dimension.
UNITARITY_TOL = 1e-10
#: Allowed deviation of |det M| from 1.
DET_TOL = 1e-8
#: Allowed deviation of an eigenvalue's modulus from 1.
EIGENVALUE_MODULUS_TOL = 1e-8
#: Relative slack on |Tr(M^j)| <= n.
TRACE_BOUND_TOL = 1e-8

_MIN_QR_PIVOT = 1e-300
_MAX_SAMPLING_ATTEMPTS = 3


class EigenSolverError(RuntimeError):
    """The dense eigensolver failed to converge; never ignored silently."""


def _as_square_complex(matrix: np.ndarray) -> np.ndarray:
    entries = np.array(matrix, dtype=complex)  # copy: the stored matrix is frozen
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {entries.shape}")
    if entries.shape[0] == 0:
        raise ValueError("matrix dimension must be positive")
    if not np.all(np.isfinite(entries.view(float))):
        raise ValueError("matrix entries must be finite")
    return entries


def unitarity_defect(matrix: np.ndarray) -> float:
    """Frobenius norm of M M^dag - I."""
    m = np.asarray(matrix)
    n = m.shape[0]
    return float(np.linalg.norm(m @ m.conj().T - np.eye(n)))


@dataclass(frozen=True)
class UnitaryMatrix:
    """An n x n matrix certified unitary at construction time.

    Construction rejects matrices whose unitarity defect exceeds
    ``UNITARITY_TOL * n`` or whose determinant modulus strays from 1 by
    more than ``DET_TOL``. ``stream`` records sampling provenance when the
    matrix came out of :func:`haar_unitary`.
    """

    matrix: np.ndarray
    defect: float = field(init=False)
    stream: RngStream | None = None

    def __post_init__(self) -> None:
        entries = _as_square_complex(self.matrix)
        entries.setflags(write=False)
        object.__setattr__(self, "matrix", entries)
        n = entries.shape[0]
        defect = unitarity_defect(entries)
        if defect > UNITARITY_TOL * n:
            raise ValueError(
                f"matrix is not unitary: defect {defect:.3e} exceeds {UNITARITY_TOL * n:.3e}"
            )
        _, logabsdet = np.linalg.slogdet(entries)
        if abs(np.expm1(logabsdet)) > DET_TOL:
            raise ValueError(f"|det| deviates from 1 by {abs(np.expm1(logabsdet)):.3e}")
        object.__setattr__(self, "defect", defect)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))


@dataclass(frozen=True)
class TraceVector:
    """Traces t_j = Tr(M^j) for j = 1..max_power of one unitary sample."""

    values: np.ndarray  # complex, length max_power
    dim: int

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=complex)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("trace vector must be a nonempty 1-d array")
        bound = self.dim * (1.0 + TRACE_BOUND_TOL)
        worst = float(np.max(np.abs(values)))
        if worst > bound:
            raise ValueError(f"|Tr(M^j)| = {worst:.6e} exceeds the dimension bound {bound:.6e}")

    @property
    def max_power(self) -> int:
        return self.values.size

    def power(self, j: int) -> complex:
        """Tr(M^j), 1-indexed."""
        if not 1 <= j <= self.max_power:
            raise ValueError(f"power {j} outside stored range 1..{self.max_power}")
        return complex(self.values[j - 1])


def sample_ginibre(n: int, stream: RngStream) -> np.ndarray:
    """n x n matrix of iid complex Gaussians X + iY, X, Y ~ N(0, 1/2)."""
    if n < 1:
        raise ValueError(f"matrix dimension must be >= 1, got {n}")
    rng = stream.generator()
    return _ginibre_from(rng, n)


def _ginibre_from(rng: np.random.Generator, n: int) -> np.ndarray:
    scale = np.sqrt(0.5)
    return rng.normal(scale=scale, size=(n, n)) + 1j * rng.normal(scale=scale, size=(n, n))


def haar_unitary(n: int, stream: RngStream) -> UnitaryMatrix:
    """Haar-distributed element of U(n), certified unitary.

    QR-factors a Ginibre sample and right-multiplies Q by
    diag(R_jj / |R_jj|). A numerically rank-deficient Ginibre draw
    (|R_jj| below 1e-300, a probability-zero event) is resampled from the
    same stream; three failures raise.
    """
    if n < 1:
        raise ValueError(f"matrix dimension must be >= 1, got {n}")
    rng = stream.generator()
    for _ in range(_MAX_SAMPLING_ATTEMPTS):
        z = _ginibre_from(rng, n)
        q, r = np.linalg.qr(z)
        diag = np.diagonal(r)
        if np.min(np.abs(diag)) < _MIN_QR_PIVOT:
            continue
        q = q * (diag / np.abs(diag))
        return UnitaryMatrix(q, stream=stream)
    raise RuntimeError(
        f"Ginibre sample numerically rank-deficient {_MAX_SAMPLING_ATTEMPTS} times in a row"
    )


def traces_of_powers(m: UnitaryMatrix, d: int) -> TraceVector:
    """Tr(M^j) for j = 1..d via a running matrix power.

    One matrix multiplication per power; only the current power is kept.
    Deliberately does not go through the eigendecomposition so that
    :func:`eigenphases` remains an independent oracle.
    """
    if d < 1:
        raise ValueError(f"maximum power must be >= 1, got {d}")
    values = np.empty(d, dtype=complex)
    power = m.matrix
    values[0] = np.trace(power)
    for j in range(1, d):
        power = power @ m.matrix
        values[j] = np.trace(power)
    return TraceVector(values, dim=m.dim)


def eigenphases(m: UnitaryMatrix) -> np.ndarray:
    """Eigenvalue angles of M, ascending in [0, 2*pi).

    The spectrum of a certified unitary lies on the unit circle; any
    computed eigenvalue whose modulus strays from 1 by more than
    ``EIGENVALUE_MODULUS_TOL`` signals solver failure and raises. LAPACK
    non-convergence is reported as :class:`EigenSolverError`, never
    swallowed.
    """
    try:
        eigenvalues = np.linalg.eigvals(m.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigensolver did not converge for n={m.dim}: {exc}") from exc
    moduli = np.abs(eigenvalues)
    worst = float(np.max(np.abs(moduli - 1.0)))
    if worst > EIGENVALUE_MODULUS_TOL:
        raise EigenSolverError(
            f"eigenvalue modulus off the unit circle by {worst:.3e} (tolerance "
            f"{EIGENVALUE_MODULUS_TOL:.1e})"
        )
    angles = np.mod(np.angle(eigenvalues), 2.0 * np.pi)
    # mod can return 2*pi for angles within rounding of a full turn
    angles[angles >= 2.0 * np.pi] = 0.0
    angles.sort()
    angles.setflags(write=False)
    return angles
