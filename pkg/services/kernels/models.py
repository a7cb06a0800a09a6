"""Kernel zoo specs.

Every spec evaluates a kernel matrix K(X, Z) and a pseudo-kernel matrix
K~(X, Z) for inputs given as rows of complex matrices. The set of families is
closed; `KERNEL_FAMILIES` maps the JSON tag of each family to its class.
"""
import logging
import warnings
from dataclasses import dataclass, field
from typing import ClassVar, Dict, Tuple, Type

import numpy as np
from scipy.spatial.distance import cdist

from services.errors.validation import DimensionMismatchError, KernelSpecError

logger = logging.getLogger(__name__)

# exp(700) is close to the float64 ceiling
OVERFLOW_EXPONENT = 700.0


class KernelOverflowWarning(RuntimeWarning):
    """A complex Gaussian kernel exponent was saturated"""
    pass


def _stack_parts(X: np.ndarray) -> np.ndarray:
    return np.hstack([X.real, X.imag])


def _check_conformable(X: np.ndarray, Z: np.ndarray):
    if X.ndim != 2 or Z.ndim != 2:
        raise DimensionMismatchError(f"inputs must be matrices, got {X.shape} and {Z.shape}")
    if X.shape[1] != Z.shape[1]:
        raise DimensionMismatchError(
            f"input dimension mismatch: {X.shape[1]} vs {Z.shape[1]}"
        )


def squared_distances(X: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """(x - z)^H (x - z) for every row pair; works for real or complex rows"""
    return cdist(_stack_parts(np.asarray(X)), _stack_parts(np.asarray(Z)), "sqeuclidean")


@dataclass(frozen=True)
class RealKernelSpec:
    """Real Gaussian kernel scale * exp(-|x - x'|^2 / gamma).

    Used both on real vectors (inside the independent kernel) and on complex
    vectors, where |.| is the complex Euclidean norm (the k_G kernel).
    """
    gamma: float
    scale: float = 1.0
    family: str = "gaussian"

    def __post_init__(self):
        if self.family != "gaussian":
            raise KernelSpecError(f"unsupported real kernel family: {self.family!r}")
        if not np.isfinite(self.gamma) or self.gamma <= 0:
            raise KernelSpecError(f"gamma must be positive, got {self.gamma}")
        if not np.isfinite(self.scale) or self.scale < 0:
            raise KernelSpecError(f"scale must be finite and non-negative, got {self.scale}")

    def matrix(self, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
        return self.scale * np.exp(-squared_distances(X, Z) / self.gamma)


def _require_positive_scale(owner: str, **specs: "RealKernelSpec"):
    # cross blocks may vanish, diagonal blocks and bases may not
    for name, spec in specs.items():
        if spec.scale <= 0:
            raise KernelSpecError(f"{owner} block {name} needs a positive scale, got {spec.scale}")


@dataclass(frozen=True)
class KernelSpec:
    family: ClassVar[str] = ""

    def kernel_matrix(self, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def pseudo_kernel_matrix(self, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
        return np.zeros((X.shape[0], Z.shape[0]), dtype=np.complex128)

    @property
    def has_null_pseudo_kernel(self) -> bool:
        return True

    @property
    def is_real_valued(self) -> bool:
        """Kernel values are real for every input pair"""
        return False

    def evaluate(self, X, Z) -> Tuple[np.ndarray, np.ndarray]:
        X = np.asarray(X, dtype=np.complex128)
        Z = np.asarray(Z, dtype=np.complex128)
        _check_conformable(X, Z)
        return (
            np.asarray(self.kernel_matrix(X, Z), dtype=np.complex128),
            np.asarray(self.pseudo_kernel_matrix(X, Z), dtype=np.complex128),
        )


@dataclass(frozen=True)
class RealGaussianKernel(KernelSpec):
    """k_G(x, x') = exp(-(x - x')^H (x - x') / gamma); null pseudo-kernel."""
    family: ClassVar[str] = "real_gaussian"
    gamma: float = 1.0

    def __post_init__(self):
        RealKernelSpec(gamma=self.gamma)

    @property
    def is_real_valued(self) -> bool:
        return True

    def kernel_matrix(self, X, Z):
        return np.exp(-squared_distances(X, Z) / self.gamma).astype(np.complex128)

    def real_matrix(self, X, Z) -> np.ndarray:
        """Same values as kernel_matrix, kept in float64"""
        return np.exp(-squared_distances(X, Z) / self.gamma)


@dataclass(frozen=True)
class ComplexGaussianKernel(KernelSpec):
    """k_C(x, x') = exp(-(x - conj(x'))^T (x - conj(x')) / gamma); null pseudo-kernel.

    Plain transpose, not conjugate transpose. The exponent's real part grows
    with |x_j + x'_j|^2 and is saturated at OVERFLOW_EXPONENT.
    """
    family: ClassVar[str] = "complex_gaussian"
    gamma: float = 1.0

    def __post_init__(self):
        RealKernelSpec(gamma=self.gamma)

    def kernel_matrix(self, X, Z):
        diff = X[:, None, :] - np.conj(Z)[None, :, :]
        exponent = -np.sum(diff * diff, axis=2) / self.gamma
        saturated = exponent.real > OVERFLOW_EXPONENT
        if np.any(saturated):
            count = int(np.count_nonzero(saturated))
            logger.warning(f"complex Gaussian exponent saturated at {OVERFLOW_EXPONENT} for {count} entries")
            warnings.warn(
                f"complex Gaussian kernel exponent exceeded {OVERFLOW_EXPONENT} in {count} entries",
                KernelOverflowWarning,
                stacklevel=3,
            )
            exponent = np.where(saturated, OVERFLOW_EXPONENT + 1j * exponent.imag, exponent)
        return np.exp(exponent)


@dataclass(frozen=True)
class IndependentKernel(KernelSpec):
    """k_ind(x, x') = κ(x_r, x'_r) + κ(x_j, x'_j) + j(κ(x_r, x'_j) - κ(x_j, x'_r)).

    κ is a real kernel of real inputs; one shared spec for all four terms.
    """
    family: ClassVar[str] = "independent"
    base: RealKernelSpec = field(default_factory=lambda: RealKernelSpec(gamma=1.0))

    def __post_init__(self):
        _require_positive_scale(self.family, base=self.base)

    def kernel_matrix(self, X, Z):
        kappa = self.base.matrix
        Xr, Xj, Zr, Zj = X.real, X.imag, Z.real, Z.imag
        real = kappa(Xr, Zr) + kappa(Xj, Zj)
        imag = kappa(Xr, Zj) - kappa(Xj, Zr)
        return real + 1j * imag


def _blocks_to_pair(rr, jj, rj, jr) -> Tuple[np.ndarray, np.ndarray]:
    kernel = (rr + jj) + 1j * (jr - rj)
    pseudo = (rr - jj) + 1j * (jr + rj)
    return kernel, pseudo


@dataclass(frozen=True)
class RealImagBlockKernel(KernelSpec):
    """Kernel and pseudo-kernel composed from four real block kernels.

    k = (κ_rr + κ_jj) + j(κ_jr - κ_rj), k~ = (κ_rr - κ_jj) + j(κ_jr + κ_rj).
    κ_rj(x, x') must equal κ_jr(x', x); with the symmetric Gaussian blocks
    shipped here that means identical cross specs, so k is always real.
    """
    family: ClassVar[str] = "real_imag_blocks"
    rr: RealKernelSpec = field(default_factory=lambda: RealKernelSpec(gamma=1.0))
    jj: RealKernelSpec = field(default_factory=lambda: RealKernelSpec(gamma=1.0))
    rj: RealKernelSpec = field(default_factory=lambda: RealKernelSpec(gamma=1.0, scale=0.0))
    jr: RealKernelSpec = field(default_factory=lambda: RealKernelSpec(gamma=1.0, scale=0.0))

    def __post_init__(self):
        _require_positive_scale(self.family, rr=self.rr, jj=self.jj)
        # stochastic check on fixed sample points
        rng = np.random.default_rng(0)
        points = rng.uniform(-3, 3, (8, 2)) + 1j * rng.uniform(-3, 3, (8, 2))
        left, right = points[:4], points[4:]
        if not np.allclose(self.rj.matrix(left, right), self.jr.matrix(right, left).T, rtol=0, atol=1e-12):
            raise KernelSpecError("real_imag_blocks needs κ_rj(x, x') = κ_jr(x', x)")

    def _blocks(self, X, Z):
        return (self.rr.matrix(X, Z), self.jj.matrix(X, Z), self.rj.matrix(X, Z), self.jr.matrix(X, Z))

    def kernel_matrix(self, X, Z):
        return _blocks_to_pair(*self._blocks(X, Z))[0]

    def pseudo_kernel_matrix(self, X, Z):
        return _blocks_to_pair(*self._blocks(X, Z))[1]

    def evaluate(self, X, Z):
        X = np.asarray(X, dtype=np.complex128)
        Z = np.asarray(Z, dtype=np.complex128)
        _check_conformable(X, Z)
        return _blocks_to_pair(*self._blocks(X, Z))

    @property
    def has_null_pseudo_kernel(self) -> bool:
        # equal cross blocks cancel in k~ only when both vanish
        return self.rr == self.jj and self.rj.scale == 0 and self.jr.scale == 0

    @property
    def is_real_valued(self) -> bool:
        return True


@dataclass(frozen=True)
class SeparateRealImagKernel(KernelSpec):
    """Independent real and imaginary parts with their own kernels.

    k = κ_rr + κ_jj, k~ = κ_rr - κ_jj.
    """
    family: ClassVar[str] = "separate_real_imag"
    rr: RealKernelSpec = field(default_factory=lambda: RealKernelSpec(gamma=1.0))
    jj: RealKernelSpec = field(default_factory=lambda: RealKernelSpec(gamma=1.0))

    def __post_init__(self):
        _require_positive_scale(self.family, rr=self.rr, jj=self.jj)

    def evaluate(self, X, Z):
        X = np.asarray(X, dtype=np.complex128)
        Z = np.asarray(Z, dtype=np.complex128)
        _check_conformable(X, Z)
        rr, jj = self.rr.matrix(X, Z), self.jj.matrix(X, Z)
        return (rr + jj).astype(np.complex128), (rr - jj).astype(np.complex128)

    def kernel_matrix(self, X, Z):
        return (self.rr.matrix(X, Z) + self.jj.matrix(X, Z)).astype(np.complex128)

    def pseudo_kernel_matrix(self, X, Z):
        return (self.rr.matrix(X, Z) - self.jj.matrix(X, Z)).astype(np.complex128)

    @property
    def has_null_pseudo_kernel(self) -> bool:
        return self.rr == self.jj

    @property
    def is_real_valued(self) -> bool:
        return True


@dataclass(frozen=True)
class SumOfSeparableKernel(KernelSpec):
    """Mixed-effect (sum of separable) design.

    k = 2 Σ_q k^(q), k~ = 2j Σ_q ω^(q) k^(q), with real Gaussian k^(q) and
    0 < ω^(q) < 1.
    """
    family: ClassVar[str] = "sum_of_separable"
    terms: Tuple[Tuple[RealKernelSpec, float], ...] = ()

    def __post_init__(self):
        if not self.terms:
            raise KernelSpecError("sum_of_separable needs at least one term")
        for kernel, weight in self.terms:
            if not isinstance(kernel, RealKernelSpec):
                raise KernelSpecError(f"sum_of_separable terms need real kernels, got {kernel!r}")
            _require_positive_scale(self.family, term=kernel)
            if not 0 < weight < 1:
                raise KernelSpecError(f"term weight must lie in (0, 1), got {weight}")

    def evaluate(self, X, Z):
        X = np.asarray(X, dtype=np.complex128)
        Z = np.asarray(Z, dtype=np.complex128)
        _check_conformable(X, Z)
        kernel = np.zeros((X.shape[0], Z.shape[0]))
        weighted = np.zeros((X.shape[0], Z.shape[0]))
        for term, weight in self.terms:
            values = term.matrix(X, Z)
            kernel += values
            weighted += weight * values
        return (2.0 * kernel).astype(np.complex128), 2j * weighted

    def kernel_matrix(self, X, Z):
        return self.evaluate(X, Z)[0]

    def pseudo_kernel_matrix(self, X, Z):
        return self.evaluate(X, Z)[1]

    @property
    def has_null_pseudo_kernel(self) -> bool:
        return False

    @property
    def is_real_valued(self) -> bool:
        return True


KERNEL_FAMILIES: Dict[str, Type[KernelSpec]] = {
    cls.family: cls
    for cls in (
        RealGaussianKernel,
        ComplexGaussianKernel,
        IndependentKernel,
        RealImagBlockKernel,
        SeparateRealImagKernel,
        SumOfSeparableKernel,
    )
}
