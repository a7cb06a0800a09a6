from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from services.errors.validation import DimensionMismatchError

ComplexVector = NDArray[np.complex128]
ComplexMatrix = NDArray[np.complex128]
RealVector = NDArray[np.float64]


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


def as_complex_vector(values: ArrayLike) -> ComplexVector:
    """Read-only complex128 copy of a 1-D input"""
    array = np.asarray(values, dtype=np.complex128)
    if array.ndim != 1:
        raise DimensionMismatchError(f"expected a vector, got shape {array.shape}")
    return _frozen(array)


def as_complex_matrix(values: ArrayLike) -> ComplexMatrix:
    """Read-only complex128 copy of a 2-D input; a 1-D input becomes one column"""
    array = np.asarray(values, dtype=np.complex128)
    if array.ndim == 1:
        array = array[:, None]
    if array.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got shape {array.shape}")
    return _frozen(array)


@dataclass(frozen=True)
class CompositeVector:
    """Real vector [Re(v); Im(v)] of length 2n."""
    values: RealVector

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size % 2:
            raise DimensionMismatchError(
                f"composite vector needs even length, got shape {values.shape}"
            )
        object.__setattr__(self, "values", _frozen(values))

    @property
    def n(self) -> int:
        return self.values.size // 2

    @property
    def real(self) -> RealVector:
        return self.values[: self.n]

    @property
    def imag(self) -> RealVector:
        return self.values[self.n :]

    def to_complex(self) -> ComplexVector:
        return as_complex_vector(self.real + 1j * self.imag)


@dataclass(frozen=True)
class AugmentedVector:
    """Complex vector [v; conj(v)] of length 2n.

    Solutions of augmented systems only carry this structure up to rounding,
    so the constructor stores the values as given; `conjugate_gap` reports how
    far the tail is from conj(head).
    """
    values: ComplexVector

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.ndim != 1 or values.size % 2:
            raise DimensionMismatchError(
                f"augmented vector needs even length, got shape {values.shape}"
            )
        object.__setattr__(self, "values", _frozen(values))

    @property
    def n(self) -> int:
        return self.values.size // 2

    @property
    def head(self) -> ComplexVector:
        return self.values[: self.n]

    @property
    def tail(self) -> ComplexVector:
        return self.values[self.n :]

    def conjugate_gap(self) -> float:
        if self.n == 0:
            return 0.0
        return float(np.max(np.abs(self.tail - np.conj(self.head))))

    def symmetrized(self) -> ComplexVector:
        """½(head + conj(tail)), the closest vector whose augmented form this is"""
        return as_complex_vector(0.5 * (self.head + np.conj(self.tail)))


@dataclass(frozen=True)
class ComplexDataset:
    """n samples of d complex inputs (rows of X) with n complex targets y."""
    X: ComplexMatrix
    y: ComplexVector

    def __post_init__(self):
        X = as_complex_matrix(self.X)
        y = as_complex_vector(self.y)
        if X.shape[0] != y.shape[0]:
            raise DimensionMismatchError(
                f"dataset has {X.shape[0]} input rows but {y.shape[0]} targets"
            )
        if X.shape[0] < 1 or X.shape[1] < 1:
            raise DimensionMismatchError(f"dataset needs n >= 1 and d >= 1, got {X.shape}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    def head(self, count: int) -> "ComplexDataset":
        return ComplexDataset(X=self.X[:count], y=self.y[:count])
