from dataclasses import dataclass

import numpy as np

from services.algebra.models import ComplexMatrix, ComplexVector, as_complex_matrix, as_complex_vector
from services.errors.validation import DimensionMismatchError, InputError
from services.kernels.models import KernelSpec


@dataclass(frozen=True)
class RidgeConfig:
    """Diagonal load λ added to the Gram matrix (not scaled by n)."""
    ridge: float

    def __post_init__(self):
        if not np.isfinite(self.ridge) or self.ridge < 0:
            raise InputError(f"ridge must be a finite value >= 0, got {self.ridge}")


@dataclass(frozen=True)
class WrkhsModel:
    """A fitted expansion f(x) = k(x, X) α + k~(x, X) conj(α)."""
    X: ComplexMatrix
    kernel: KernelSpec
    ridge: float
    alpha: ComplexVector

    def __post_init__(self):
        X = as_complex_matrix(self.X)
        alpha = as_complex_vector(self.alpha)
        if X.shape[0] != alpha.shape[0]:
            raise DimensionMismatchError(
                f"model has {X.shape[0]} training inputs but {alpha.shape[0]} coefficients"
            )
        if not np.all(np.isfinite(alpha)):
            raise InputError("model coefficients must be finite")
        RidgeConfig(self.ridge)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]
