from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from services.algebra.models import as_complex_matrix, as_complex_vector
from services.errors.validation import DimensionMismatchError
from services.kernels.models import KernelSpec


class CompositeBlocks(NamedTuple):
    """Real-imaginary feature-space kernels recovered from (k, k~)."""
    rr: np.ndarray
    rj: np.ndarray
    jr: np.ndarray
    jj: np.ndarray


def _pair_inputs(x: ArrayLike, x_prime: ArrayLike):
    x = as_complex_vector(np.atleast_1d(x))
    x_prime = as_complex_vector(np.atleast_1d(x_prime))
    if x.shape != x_prime.shape:
        raise DimensionMismatchError(f"input dimension mismatch: {x.size} vs {x_prime.size}")
    return x[None, :], x_prime[None, :]


def eval_kernel(spec: KernelSpec, x: ArrayLike, x_prime: ArrayLike) -> complex:
    X, Z = _pair_inputs(x, x_prime)
    return complex(spec.kernel_matrix(X, Z)[0, 0])


def eval_pseudo_kernel(spec: KernelSpec, x: ArrayLike, x_prime: ArrayLike) -> complex:
    X, Z = _pair_inputs(x, x_prime)
    return complex(spec.pseudo_kernel_matrix(X, Z)[0, 0])


def gram(spec: KernelSpec, X: ArrayLike, Z: ArrayLike) -> np.ndarray:
    """[K(X, Z)]_{r,s} = k(x_r, z_s)"""
    return spec.evaluate(as_complex_matrix(X), as_complex_matrix(Z))[0]


def pseudo_gram(spec: KernelSpec, X: ArrayLike, Z: ArrayLike) -> np.ndarray:
    return spec.evaluate(as_complex_matrix(X), as_complex_matrix(Z))[1]


def kernel_pair(spec: KernelSpec, X: ArrayLike, Z: ArrayLike):
    """(K(X, Z), K~(X, Z)) from a single evaluation pass"""
    return spec.evaluate(as_complex_matrix(X), as_complex_matrix(Z))


def augmented_from_pair(kernel: np.ndarray, pseudo: np.ndarray) -> np.ndarray:
    return np.block([[kernel, pseudo], [np.conj(pseudo), np.conj(kernel)]])


def augmented_gram(spec: KernelSpec, X: ArrayLike, Z: ArrayLike = None) -> np.ndarray:
    """[[K, K~], [K~*, K*]]; with Z omitted this is the 2n x 2n training matrix"""
    Z = X if Z is None else Z
    return augmented_from_pair(*kernel_pair(spec, X, Z))


def blocks_from_pair(kernel: np.ndarray, pseudo: np.ndarray) -> CompositeBlocks:
    return CompositeBlocks(
        rr=(kernel.real + pseudo.real) / 2,
        rj=(pseudo.imag - kernel.imag) / 2,
        jr=(kernel.imag + pseudo.imag) / 2,
        jj=(kernel.real - pseudo.real) / 2,
    )


def composite_blocks(spec: KernelSpec, X_star: ArrayLike, X: ArrayLike) -> CompositeBlocks:
    return blocks_from_pair(*kernel_pair(spec, X_star, X))


def pair_from_blocks(blocks: CompositeBlocks):
    """Inverse of blocks_from_pair: the kernel/pseudo-kernel identification"""
    kernel = (blocks.rr + blocks.jj) + 1j * (blocks.jr - blocks.rj)
    pseudo = (blocks.rr - blocks.jj) + 1j * (blocks.jr + blocks.rj)
    return kernel, pseudo


def composite_matrix(blocks: CompositeBlocks) -> np.ndarray:
    """2 [[γ_rr, γ_rj], [γ_jr, γ_jj]], the matrix-valued kernel acting on [α_r; α_j]"""
    return 2.0 * np.block([[blocks.rr, blocks.rj], [blocks.jr, blocks.jj]])


def composite_gram(spec: KernelSpec, X_star: ArrayLike, X: ArrayLike = None) -> np.ndarray:
    X = X_star if X is None else X
    return composite_matrix(composite_blocks(spec, X_star, X))
