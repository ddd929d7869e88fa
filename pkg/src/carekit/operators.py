"""Dense symmetric operators, the semidefinite cone, and order comparisons.

Everything downstream (Lyapunov solves, Newton iterations, the geometry
estimators) funnels through the primitives here: validated dense matrices,
symmetrization with a drift check, eigenvalue-based cone membership, and the
partial order it induces.
"""

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import (
    AsymmetricInput,
    DimensionMismatch,
    EigensolverFailure,
    InvalidProblem,
)


@dataclass(frozen=True)
class ConeTolerances:
    """Relative tolerances that define the numerical semidefinite cone.

    ``psd_tol`` bounds how negative the smallest eigenvalue may be, relative
    to max(1, spectral norm). ``sym_tol`` bounds the allowed asymmetry of
    inputs, relative to max(1, Frobenius norm). Both must lie in (0, 1).
    """

    psd_tol: float = 1e-8
    sym_tol: float = 1e-10

    def __post_init__(self):
        for name, value in (("psd_tol", self.psd_tol), ("sym_tol", self.sym_tol)):
            if not (0.0 < value < 1.0):
                raise InvalidProblem(f"{name} must lie strictly between 0 and 1, got {value}")


DEFAULT_TOLS = ConeTolerances()


class Ordering(Enum):
    """Outcome of comparing two symmetric operators in the semidefinite order."""

    EQUAL = "equal"
    LESS_EQUAL = "less_equal"
    GREATER_EQUAL = "greater_equal"
    INCOMPARABLE = "incomparable"


class OperatorNorms(NamedTuple):
    frobenius: float
    spectral: float


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D float64 array with finite entries."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {A.shape}")
    if A.size == 0:
        raise DimensionMismatch(f"{name} must be non-empty")
    if not np.all(np.isfinite(A)):
        raise InvalidProblem(f"{name} contains non-finite entries")
    return A


def as_square(M, name: str = "matrix") -> np.ndarray:
    A = as_matrix(M, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {A.shape}")
    return A


def as_vector(x, name: str = "vector") -> np.ndarray:
    v = np.asarray(x, dtype=float).ravel()
    if v.size == 0:
        raise DimensionMismatch(f"{name} must be non-empty")
    if not np.all(np.isfinite(v)):
        raise InvalidProblem(f"{name} contains non-finite entries")
    return v


def sym_part(P) -> np.ndarray:
    P = np.asarray(P, dtype=float)
    return 0.5 * (P + P.T)


def asymmetry(P) -> float:
    """Relative asymmetry: max |P - P^T| over max(1, ||P||_F)."""
    P = np.asarray(P, dtype=float)
    return float(np.max(np.abs(P - P.T)) / max(1.0, np.linalg.norm(P)))


def ensure_symmetric(P, sym_tol: float | None = None, name: str = "P") -> np.ndarray:
    """Validate symmetry and return the exactly symmetrized matrix.

    Raises ``AsymmetricInput`` when the relative asymmetry exceeds
    ``sym_tol`` (default from ``DEFAULT_TOLS``): drift beyond that level is
    a bug signal in the producing computation, not roundoff.
    """
    A = as_square(P, name)
    tol = DEFAULT_TOLS.sym_tol if sym_tol is None else sym_tol
    drift = asymmetry(A)
    if drift > tol:
        raise AsymmetricInput(f"{name} asymmetry {drift:.3e} exceeds tolerance {tol:.3e}")
    return sym_part(A)


def pairing(P, x, y) -> float:
    """Bilinear pairing y^T P x; symmetric in (x, y) for symmetric P."""
    A = as_square(P, "P")
    xv = as_vector(x, "x")
    yv = as_vector(y, "y")
    if not (A.shape[0] == xv.size == yv.size):
        raise DimensionMismatch(
            f"pairing needs matching sizes, got P {A.shape}, x {xv.size}, y {yv.size}"
        )
    return float(yv @ (A @ xv))


def symmetric_eigenvalues(P) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, ascending. Failure is an error, never a value."""
    A = sym_part(as_square(P, "P"))
    try:
        return np.linalg.eigvalsh(A)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(f"symmetric eigensolve failed: {exc}") from exc


def min_eigenvalue(P) -> float:
    return float(symmetric_eigenvalues(P)[0])


def is_psd(P, tols: ConeTolerances = DEFAULT_TOLS) -> bool:
    """Cone membership: smallest eigenvalue >= -psd_tol * max(1, ||P||_2).

    Uses a full symmetric eigendecomposition rather than Cholesky so that
    boundary (singular PSD) matrices are classified as members: the cone is
    closed.
    """
    w = symmetric_eigenvalues(P)
    scale = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    return bool(w[0] >= -tols.psd_tol * scale)


def cone_compare(P, R, tols: ConeTolerances = DEFAULT_TOLS) -> Ordering:
    """Classify P vs R in the semidefinite partial order."""
    A = as_square(P, "P")
    B = as_square(R, "R")
    if A.shape != B.shape:
        raise DimensionMismatch(f"cone_compare needs equal shapes, got {A.shape} and {B.shape}")
    le = is_psd(B - A, tols)
    ge = is_psd(A - B, tols)
    if le and ge:
        return Ordering.EQUAL
    if le:
        return Ordering.LESS_EQUAL
    if ge:
        return Ordering.GREATER_EQUAL
    return Ordering.INCOMPARABLE


def op_norms(M) -> OperatorNorms:
    """Frobenius and spectral (largest singular value) norms."""
    A = as_matrix(M, "matrix")
    fro = float(np.linalg.norm(A))
    if fro == 0.0:
        return OperatorNorms(0.0, 0.0)
    try:
        spec = float(np.linalg.svd(A, compute_uv=False)[0])
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(f"SVD failed: {exc}") from exc
    return OperatorNorms(fro, spec)
