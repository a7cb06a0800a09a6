"""Batch WRKHS / SRKHS ridge regression.

Three algebraically equivalent fit paths:

- composite: real 2n x 2n system (K_com + λI) α_com = y_com;
- direct: complex 2n x 2n augmented system (K̄ + λI) ᾱ = ȳ;
- schur: n x n solves with C = K + λI and P = C - K~ C^{-*} K~*.

The SRKHS path is the n x n system (K + λI) α = y for null pseudo-kernels.
"""
import logging
from typing import Literal, Optional

import numpy as np
from numpy.typing import ArrayLike

from core.config import config as cfg
from services.algebra.models import (
    AugmentedVector,
    ComplexDataset,
    ComplexVector,
    CompositeVector,
    as_complex_matrix,
    as_complex_vector,
)
from services.algebra.solver import conjugate_solve, hermitian_solve
from services.algebra.transforms import composite_to_augmented, to_augmented, to_composite
from services.errors.numerical import ConjugateSymmetryError
from services.errors.validation import DimensionMismatchError, InputError, KernelSpecError
from services.kernels.gram import augmented_from_pair, composite_gram, kernel_pair
from services.kernels.models import KernelSpec
from services.regression.models import RidgeConfig, WrkhsModel

logger = logging.getLogger(__name__)

FitPath = Literal["composite", "direct", "schur", "srkhs"]
CONJUGATE_TOL = 1e-6


def _relative_residual(A: np.ndarray, x: np.ndarray, b: np.ndarray) -> float:
    norm_b = float(np.linalg.norm(b))
    return float(np.linalg.norm(A @ x - b)) / (norm_b if norm_b > 0 else 1.0)


def fit_composite(data: ComplexDataset, spec: KernelSpec, ridge: float) -> CompositeVector:
    """α_com = (K_com + λ I_2n)^-1 y_com"""
    RidgeConfig(ridge)
    K_com = composite_gram(spec, data.X)
    A = K_com + ridge * np.eye(2 * data.n)
    y_com = to_composite(data.y).values
    alpha_com = hermitian_solve(A, y_com)
    logger.debug(f"composite fit n={data.n}: relative residual {_relative_residual(A, alpha_com, y_com):.2e}")
    return CompositeVector(alpha_com)


def predict_composite(
    X: ArrayLike, spec: KernelSpec, alpha_com: CompositeVector, X_star: ArrayLike
) -> ComplexVector:
    """K_com(X*, X) α_com with the real and imaginary halves reassembled"""
    X = as_complex_matrix(X)
    X_star = as_complex_matrix(X_star)
    if X.shape[1] != X_star.shape[1]:
        raise DimensionMismatchError(f"model inputs have d={X.shape[1]}, got d={X_star.shape[1]}")
    stacked = composite_gram(spec, X_star, X) @ alpha_com.values
    m = X_star.shape[0]
    return as_complex_vector(stacked[:m] + 1j * stacked[m:])


def _solve_direct(kernel, pseudo, y, ridge) -> np.ndarray:
    n = y.size
    A = augmented_from_pair(kernel, pseudo) + ridge * np.eye(2 * n)
    y_aug = to_augmented(y).values
    solution = hermitian_solve(A, y_aug)
    logger.debug(f"augmented fit n={n}: relative residual {_relative_residual(A, solution, y_aug):.2e}")
    return solution


def _solve_schur(kernel, pseudo, y, ridge) -> np.ndarray:
    n = y.size
    C = kernel + ridge * np.eye(n)
    P = C - pseudo @ conjugate_solve(C, np.conj(pseudo))
    P = 0.5 * (P + P.conj().T)
    p_y = hermitian_solve(P, y)
    p_conj_y = conjugate_solve(P, np.conj(y))
    head = p_y - hermitian_solve(C, pseudo @ p_conj_y)
    tail = p_conj_y - conjugate_solve(C, np.conj(pseudo) @ p_y)
    return np.concatenate([head, tail])


def solve_augmented(
    data: ComplexDataset,
    spec: KernelSpec,
    ridge: float,
    method: Literal["direct", "schur"] = "direct",
) -> AugmentedVector:
    """Full ᾱ = [α; conj(α)] as solved, before symmetrization"""
    RidgeConfig(ridge)
    kernel, pseudo = kernel_pair(spec, data.X, data.X)
    if method == "direct":
        return AugmentedVector(_solve_direct(kernel, pseudo, data.y, ridge))
    if method == "schur":
        return AugmentedVector(_solve_schur(kernel, pseudo, data.y, ridge))
    raise InputError(f"unknown augmented solve method: {method!r}")


def enforce_conjugate_structure(solution: AugmentedVector, tol: float = CONJUGATE_TOL) -> ComplexVector:
    """½(head + conj(tail)); the gap is measured relative to max(1, max|head|)"""
    scale = max(1.0, float(np.max(np.abs(solution.head)))) if solution.n else 1.0
    gap = solution.conjugate_gap() / scale
    logger.debug(f"augmented solution conjugate discrepancy {gap:.2e} (relative)")
    if gap > tol:
        raise ConjugateSymmetryError(
            f"augmented solution tail deviates from conj(head) by {gap:.3e} relative (tolerance {tol:.0e})"
        )
    return solution.symmetrized()


def fit_augmented(
    data: ComplexDataset,
    spec: KernelSpec,
    ridge: float,
    method: Literal["direct", "schur"] = "direct",
) -> ComplexVector:
    return enforce_conjugate_structure(solve_augmented(data, spec, ridge, method))


def fit_srkhs(data: ComplexDataset, spec: KernelSpec, ridge: float) -> ComplexVector:
    """α = (K + λ I_n)^-1 y; refuses kernels with a pseudo-kernel"""
    if not spec.has_null_pseudo_kernel:
        raise KernelSpecError(
            f"{spec.family} has a non-null pseudo-kernel; use fit_augmented"
        )
    RidgeConfig(ridge)
    kernel, _ = kernel_pair(spec, data.X, data.X)
    if spec.is_real_valued:
        kernel = kernel.real
    A = kernel + ridge * np.eye(data.n)
    alpha = hermitian_solve(A, data.y)
    logger.debug(f"srkhs fit n={data.n}: relative residual {_relative_residual(A, alpha, data.y):.2e}")
    return as_complex_vector(alpha)


def resolve_fit_path(path: Optional[FitPath] = None) -> FitPath:
    """The requested path, or the configured default"""
    return path or cfg.get("regression.fit_path", "direct")


def fit(
    data: ComplexDataset,
    spec: KernelSpec,
    ridge: float,
    path: Optional[FitPath] = None,
) -> WrkhsModel:
    """Fit a model along the requested path (configured default: direct augmented)"""
    path = resolve_fit_path(path)
    logger.info(f"fitting {spec.family} kernel on n={data.n}, d={data.d}, ridge={ridge}, path={path}")
    if path == "composite":
        alpha = composite_to_augmented(fit_composite(data, spec, ridge)).head
    elif path in ("direct", "schur"):
        alpha = fit_augmented(data, spec, ridge, method=path)
    elif path == "srkhs":
        alpha = fit_srkhs(data, spec, ridge)
    else:
        raise InputError(f"unknown fit path: {path!r}")
    return WrkhsModel(X=data.X, kernel=spec, ridge=ridge, alpha=alpha)


def predict(model: WrkhsModel, X_star: ArrayLike) -> ComplexVector:
    """f(x*) = k(x*, X) α + k~(x*, X) conj(α)"""
    X_star = as_complex_matrix(X_star)
    if X_star.shape[1] != model.d:
        raise DimensionMismatchError(f"model inputs have d={model.d}, got d={X_star.shape[1]}")
    kernel, pseudo = kernel_pair(model.kernel, X_star, model.X)
    prediction = kernel @ model.alpha
    if not model.kernel.has_null_pseudo_kernel:
        prediction = prediction + pseudo @ np.conj(model.alpha)
    return as_complex_vector(prediction)
