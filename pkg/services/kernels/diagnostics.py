"""Opt-in validity checks for kernel specs (O(n^3), never run by constructors)."""
import logging
from typing import Optional

import numpy as np

from services.kernels.gram import composite_gram
from services.kernels.models import KernelSpec, RealImagBlockKernel

logger = logging.getLogger(__name__)


def min_composite_eigenvalue(spec: KernelSpec, X) -> float:
    matrix = composite_gram(spec, X)
    matrix = 0.5 * (matrix + matrix.T)
    return float(np.linalg.eigvalsh(matrix)[0])


def check_psd(spec: KernelSpec, X, tol: float = 1e-10) -> bool:
    """True when the composite Gram matrix on X has min eigenvalue >= -tol"""
    smallest = min_composite_eigenvalue(spec, X)
    if smallest < -tol:
        logger.warning(f"{spec.family} composite Gram is not PSD on {len(X)} points: min eigenvalue {smallest:.3e}")
        return False
    return True


def check_cross_symmetry(
    spec: RealImagBlockKernel,
    rng: Optional[np.random.Generator] = None,
    trials: int = 64,
    dim: int = 1,
    tol: float = 1e-12,
) -> bool:
    """Stochastic check of κ_rj(x, x') = κ_jr(x', x) on random input pairs"""
    rng = rng if rng is not None else np.random.default_rng()
    X = rng.normal(size=(trials, dim)) + 1j * rng.normal(size=(trials, dim))
    Z = rng.normal(size=(trials, dim)) + 1j * rng.normal(size=(trials, dim))
    forward = spec.rj.matrix(X, Z)
    backward = spec.jr.matrix(Z, X).T
    return bool(np.max(np.abs(forward - backward)) <= tol)
