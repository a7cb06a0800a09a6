import logging

import numpy as np
import pytest

from services.algebra.models import AugmentedVector, ComplexDataset, CompositeVector
from services.algebra.solver import check_hermitian, conjugate_solve, hermitian_inverse, hermitian_solve
from services.algebra.transforms import (
    augmented_to_composite,
    composite_to_augmented,
    to_augmented,
    to_composite,
    transform_matrix,
)
from services.errors.numerical import FactorizationError, NotHermitianError
from services.errors.validation import DimensionMismatchError
from tests.conftest import random_complex


@pytest.mark.parametrize("v, expected", [
    ([1 + 2j], [1, 2]),
    ([0, 0], [0, 0, 0, 0]),
    ([3 - 1j, -2j], [3, 0, -1, -2]),
])
def test_to_composite(v, expected):
    assert np.array_equal(to_composite(v).values, expected)


@pytest.mark.parametrize("v, expected", [
    ([1 + 2j], [1 + 2j, 1 - 2j]),
    ([1.5, -2.0], [1.5, -2.0, 1.5, -2.0]),
    ([1j], [1j, -1j]),
])
def test_to_augmented(v, expected):
    assert np.array_equal(to_augmented(v).values, expected)


def test_composite_to_augmented_examples():
    assert np.array_equal(composite_to_augmented(CompositeVector([1.0, 2.0])).values, [1 + 2j, 1 - 2j])
    assert np.array_equal(composite_to_augmented([4.0, 0.0]).values, [4.0, 4.0])
    with pytest.raises(DimensionMismatchError):
        composite_to_augmented(np.array([1.0, 2.0, 3.0]))


def test_composite_and_augmented_forms_agree(rng):
    for n in (1, 3, 10):
        v = random_complex(rng, n)
        assert np.array_equal(composite_to_augmented(to_composite(v)).values, to_augmented(v).values)
        composite = to_composite(v).values
        assert np.allclose(transform_matrix(n) @ composite, to_augmented(v).values, atol=1e-14)
        assert np.allclose(augmented_to_composite(to_augmented(v)).values, composite, atol=1e-14)


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_transform_matrix_is_unitary_up_to_two(n):
    T = transform_matrix(n)
    assert np.array_equal(T @ T.conj().T, 2 * np.eye(2 * n))
    assert np.array_equal(T.conj().T @ T, 2 * np.eye(2 * n))


def test_composite_vector_round_trip_and_parts():
    v = CompositeVector([1.0, -2.0, 0.5, 3.0])
    assert v.n == 2
    assert np.array_equal(v.real, [1.0, -2.0])
    assert np.array_equal(v.imag, [0.5, 3.0])
    assert np.array_equal(to_composite(v.to_complex()).values, v.values)
    with pytest.raises(DimensionMismatchError):
        CompositeVector([1.0, 2.0, 3.0])


def test_augmented_vector_symmetrizes():
    v = AugmentedVector([1 + 1j, 2 - 1j, 1 - 1.1j, 2 + 1j])
    assert v.conjugate_gap() == pytest.approx(0.1)
    assert np.allclose(v.symmetrized(), [1 + 1.05j, 2 - 1j])


def test_vectors_are_read_only():
    v = to_composite([1 + 1j])
    with pytest.raises(ValueError):
        v.values[0] = 5.0


def test_dataset_validation():
    data = ComplexDataset(X=[1j, 2, 3], y=[0, 1, 2])
    assert (data.n, data.d) == (3, 1)
    assert data.head(2).n == 2
    with pytest.raises(DimensionMismatchError):
        ComplexDataset(X=np.zeros((3, 2)), y=np.zeros(2))


def test_hermitian_solve_identity_and_scaling(rng):
    B = random_complex(rng, 4, 3)
    assert np.array_equal(hermitian_solve(np.eye(4), B), B)
    v = random_complex(rng, 4)
    assert np.array_equal(hermitian_solve(2 * np.eye(4), v), v / 2)


def test_hermitian_solve_residual(rng):
    M = random_complex(rng, 5, 5)
    A = M @ M.conj().T + 5 * np.eye(5)
    B = random_complex(rng, 5)
    X = hermitian_solve(A, B)
    assert np.linalg.norm(A @ X - B) <= 1e-10 * np.linalg.norm(B)
    assert np.allclose(hermitian_inverse(A) @ A, np.eye(5), atol=1e-10)
    assert np.allclose(np.conj(A) @ conjugate_solve(A, B), B, atol=1e-10)


def test_hermitian_solve_rejects_non_hermitian():
    A = np.array([[2.0, 1.0], [0.0, 2.0]])
    with pytest.raises(NotHermitianError):
        hermitian_solve(A, np.ones(2))
    # tolerance is relative to the matrix scale
    assert check_hermitian(np.array([[1.0, 1e-14], [0.0, 1.0]])) == pytest.approx(1e-14)
    assert check_hermitian(np.array([[1e3, 1e-10], [0.0, 1e3]])) == pytest.approx(1e-10)
    with pytest.raises(NotHermitianError):
        check_hermitian(np.array([[1e3, 1e-8], [0.0, 1e3]]))


def test_hermitian_solve_rejects_indefinite():
    with pytest.raises(FactorizationError):
        hermitian_solve(np.array([[1.0, 2.0], [2.0, 1.0]]), np.ones(2))
    with pytest.raises(FactorizationError):
        hermitian_solve(np.diag([1.0, -1.0]), np.ones(2))


def test_hermitian_solve_jitter_rescues_singular_psd(caplog):
    A = np.ones((2, 2))
    with caplog.at_level(logging.WARNING, logger="services.algebra.solver"):
        X = hermitian_solve(A, np.array([1.0, 1.0]))
    assert np.all(np.isfinite(X))
    assert "jitter" in caplog.text


def test_hermitian_solve_shape_checks():
    with pytest.raises(DimensionMismatchError):
        hermitian_solve(np.eye(3), np.ones(2))
    with pytest.raises(DimensionMismatchError):
        hermitian_solve(np.ones((2, 3)), np.ones(2))
