"""Composite <-> augmented representation algebra.

A complex vector v of length n has two real-friendly forms:

- composite: [Re(v); Im(v)], a real vector of length 2n;
- augmented: [v; conj(v)], a complex vector of length 2n.

They are related by T = [[I, jI], [I, -jI]], with T T^H = T^H T = 2I, so
augmented = T @ composite and composite = ½ T^H @ augmented.
"""
import numpy as np
from numpy.typing import ArrayLike

from services.algebra.models import (
    AugmentedVector,
    ComplexMatrix,
    CompositeVector,
    as_complex_vector,
)
from services.errors.validation import DimensionMismatchError


def to_composite(v: ArrayLike) -> CompositeVector:
    v = as_complex_vector(v)
    return CompositeVector(np.concatenate([v.real, v.imag]))


def to_augmented(v: ArrayLike) -> AugmentedVector:
    v = as_complex_vector(v)
    return AugmentedVector(np.concatenate([v, np.conj(v)]))


def transform_matrix(n: int) -> ComplexMatrix:
    """T for vectors of length n (a 2n x 2n matrix)"""
    if n < 0:
        raise DimensionMismatchError(f"n must be non-negative, got {n}")
    eye = np.eye(n)
    return np.block([[eye, 1j * eye], [eye, -1j * eye]]).astype(np.complex128)


def composite_to_augmented(vc) -> AugmentedVector:
    """T @ vc, computed blockwise"""
    values = vc.values if isinstance(vc, CompositeVector) else np.asarray(vc)
    if values.ndim != 1 or values.size % 2:
        raise DimensionMismatchError(
            f"composite input needs even length, got shape {values.shape}"
        )
    n = values.size // 2
    head = values[:n] + 1j * values[n:]
    return AugmentedVector(np.concatenate([head, np.conj(head)]))


def augmented_to_composite(va) -> CompositeVector:
    """½ T^H @ va; exact inverse of composite_to_augmented"""
    values = va.values if isinstance(va, AugmentedVector) else np.asarray(va, dtype=np.complex128)
    if values.ndim != 1 or values.size % 2:
        raise DimensionMismatchError(
            f"augmented input needs even length, got shape {values.shape}"
        )
    n = values.size // 2
    head, tail = values[:n], values[n:]
    real = 0.5 * (head + tail)
    imag = -0.5j * (head - tail)
    return CompositeVector(np.concatenate([real.real, imag.real]))
