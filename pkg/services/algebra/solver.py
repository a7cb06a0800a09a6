import logging

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from services.errors.numerical import FactorizationError, NotHermitianError
from services.errors.validation import DimensionMismatchError

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
JITTER_SCALE = 1e-12


def check_hermitian(A: np.ndarray, tol: float = HERMITIAN_TOL) -> float:
    """Max |A - A^H|, relative to max(1, max|A|); raises when above tol"""
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {A.shape}")
    if A.size == 0:
        return 0.0
    asymmetry = float(np.max(np.abs(A - A.conj().T)))
    scale = max(1.0, float(np.max(np.abs(A))))
    if asymmetry > tol * scale:
        raise NotHermitianError(
            f"matrix is not Hermitian: max asymmetry {asymmetry:.3e} exceeds {tol * scale:.3e}"
        )
    return asymmetry


def cholesky_factor(A: ArrayLike):
    """Lower Cholesky factor of a Hermitian PD matrix, with one jitter retry.

    Returns the `(c, lower)` pair accepted by `scipy.linalg.cho_solve`.
    """
    A = np.asarray(A)
    if not np.iscomplexobj(A):
        A = A.astype(np.float64)
    check_hermitian(A)
    A = 0.5 * (A + A.conj().T)
    try:
        return scipy.linalg.cho_factor(A, lower=True, check_finite=True)
    except np.linalg.LinAlgError as e:
        n = A.shape[0]
        jitter = JITTER_SCALE * float(np.trace(A).real) / n
        logger.warning(f"Cholesky failed on {n}x{n} matrix ({e}); retrying with jitter {jitter:.3e}")
        try:
            return scipy.linalg.cho_factor(A + jitter * np.eye(n), lower=True, check_finite=True)
        except np.linalg.LinAlgError as retry_error:
            raise FactorizationError(
                f"matrix is not positive definite even after jitter {jitter:.3e}"
            ) from retry_error
    except ValueError as e:
        # non-finite entries
        raise FactorizationError(f"cannot factorize matrix: {e}") from e


def hermitian_solve(A: ArrayLike, B: ArrayLike) -> np.ndarray:
    """Solve A X = B for Hermitian positive definite A.

    B may be a vector or a matrix; the result has the shape of B.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {A.shape}")
    if B.shape[0] != A.shape[0]:
        raise DimensionMismatchError(
            f"right-hand side has {B.shape[0]} rows, matrix is {A.shape[0]}x{A.shape[1]}"
        )
    if A.shape[0] == 0:
        return np.zeros_like(B, dtype=np.result_type(A, B, np.float64))
    diagonal = np.diag(A)
    if np.count_nonzero(A - np.diag(diagonal)) == 0:
        # exact path for diagonal systems
        check_hermitian(A)
        if np.any(diagonal.real <= 0):
            raise FactorizationError("diagonal matrix has non-positive entries")
        scale = diagonal.real
        return B / (scale if B.ndim == 1 else scale[:, None])
    factor = cholesky_factor(A)
    return scipy.linalg.cho_solve(factor, B, check_finite=False)


def hermitian_inverse(A: ArrayLike) -> np.ndarray:
    """(A)^-1 for Hermitian PD A, re-symmetrized"""
    A = np.asarray(A)
    inverse = hermitian_solve(A, np.eye(A.shape[0], dtype=A.dtype))
    return 0.5 * (inverse + inverse.conj().T)


def conjugate_solve(A: ArrayLike, B: ArrayLike) -> np.ndarray:
    """Solve conj(A) X = B, i.e. apply A^{-*}"""
    return hermitian_solve(np.conj(np.asarray(A)), B)
