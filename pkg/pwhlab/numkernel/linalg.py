"""
Dense Numeric Kernel
====================
Small dense matrices only (n up to a few dozen). Everything here is a pure
function of its inputs; arrays passed in are never modified.
"""

import logging
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from pwhlab.errors import InputError, NumericError, SingularMatrixError

logger = logging.getLogger(__name__)

PD_TOLERANCE_FACTOR = 1e-12
SYMMETRY_TOLERANCE = 1e-12   # Relative to the largest entry
SINGULAR_PIVOT = 1e-14       # Relative to the largest entry


@dataclass(frozen=True)
class CholeskyVerdict:
    positive_definite: bool
    factor: Optional[np.ndarray] = None


# --- COERCION ---

def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Copy `a` into a finite 2-D float array or raise InputError."""
    try:
        arr = np.array(a, dtype=float, copy=True)
    except (TypeError, ValueError) as e:
        raise InputError(f"{name} is not a numeric matrix") from e
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise InputError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} has non-finite entries")
    return arr


def as_sym_matrix(a, name: str = "matrix") -> np.ndarray:
    arr = as_matrix(a, name)
    if arr.shape[0] != arr.shape[1]:
        raise InputError(f"{name} must be square, got shape {arr.shape}")
    if not is_symmetric(arr):
        raise InputError(f"{name} is not symmetric")
    return arr


def as_vector(v, n: Optional[int] = None, name: str = "vector") -> np.ndarray:
    try:
        arr = np.array(v, dtype=float, copy=True).reshape(-1)
    except (TypeError, ValueError) as e:
        raise InputError(f"{name} is not a numeric vector") from e
    if n is not None and arr.shape[0] != n:
        raise InputError(f"{name} has length {arr.shape[0]}, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} has non-finite entries")
    return arr


# --- STRUCTURE CHECKS ---

def _scale(a: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0


def is_symmetric(a: np.ndarray, tol: float = SYMMETRY_TOLERANCE) -> bool:
    return a.shape[0] == a.shape[1] and bool(np.all(np.abs(a - a.T) <= tol * _scale(a)))


def is_skew(a: np.ndarray, tol: float = 1e-14) -> bool:
    """Entrywise J + Jᵀ = 0 within an absolute tolerance."""
    return a.shape[0] == a.shape[1] and bool(np.all(np.abs(a + a.T) <= tol))


def is_diagonal(a: np.ndarray, tol: float = 1e-14) -> bool:
    off = a - np.diag(np.diag(a))
    return bool(np.all(np.abs(off) <= tol))


# --- DECOMPOSITIONS ---

def pd_tolerance(a: np.ndarray) -> float:
    """Relative pivot floor: 1e-12 * max(1, largest diagonal entry)."""
    return PD_TOLERANCE_FACTOR * max(1.0, float(np.max(np.diag(a))))


def cholesky_pd(a) -> CholeskyVerdict:
    """
    Positive-definiteness test by Cholesky factorization.

    Positive definite iff every pivot (squared diagonal of the factor)
    exceeds pd_tolerance(a). The lower factor is returned only then.
    """
    arr = as_sym_matrix(a, "matrix")
    try:
        factor = linalg.cholesky(arr, lower=True, check_finite=False)
    except linalg.LinAlgError:
        return CholeskyVerdict(positive_definite=False)

    pivots = np.diag(factor) ** 2
    if np.min(pivots) <= pd_tolerance(arr):
        return CholeskyVerdict(positive_definite=False)
    return CholeskyVerdict(positive_definite=True, factor=factor)


def sym_eig_extremes(a) -> Tuple[float, float]:
    """Smallest and largest eigenvalue of a symmetric matrix."""
    arr = as_sym_matrix(a, "matrix")
    try:
        eigs = linalg.eigh(arr, eigvals_only=True, check_finite=False)
    except linalg.LinAlgError as e:
        raise NumericError(f"Symmetric eigensolver failed to converge for n={arr.shape[0]}: {e}") from e
    return float(eigs[0]), float(eigs[-1])


def solve_linear(a, b) -> np.ndarray:
    """
    Solve A x = b by LU with partial pivoting.

    `b` may be a vector or a matrix of right-hand sides. Raises
    SingularMatrixError when a pivot falls below 1e-14 * max|A|.
    """
    arr = as_matrix(a, "A")
    if arr.shape[0] != arr.shape[1]:
        raise InputError(f"A must be square, got shape {arr.shape}")
    rhs = np.array(b, dtype=float)
    if rhs.shape[0] != arr.shape[0]:
        raise InputError(f"b has {rhs.shape[0]} rows, expected {arr.shape[0]}")
    if not np.all(np.isfinite(rhs)):
        raise InputError("b has non-finite entries")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(arr, check_finite=False)

    pivots = np.abs(np.diag(lu))
    threshold = SINGULAR_PIVOT * _scale(arr)
    if np.min(pivots) <= threshold:
        raise SingularMatrixError(
            f"Matrix is numerically singular (smallest pivot {np.min(pivots):.3e} <= {threshold:.3e})"
        )
    return linalg.lu_solve((lu, piv), rhs, check_finite=False)


def spectral_abscissa(a) -> float:
    """Largest real part over the eigenvalues of a small dense matrix."""
    arr = as_matrix(a, "A")
    if arr.shape[0] != arr.shape[1]:
        raise InputError(f"A must be square, got shape {arr.shape}")
    try:
        eigs = linalg.eigvals(arr, check_finite=False)
    except linalg.LinAlgError as e:
        raise NumericError(f"Eigenvalue computation failed to converge: {e}") from e
    return float(np.max(eigs.real))
