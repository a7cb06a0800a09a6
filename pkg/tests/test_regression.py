import numpy as np
import pytest

from services.algebra.models import ComplexDataset
from services.algebra.transforms import composite_to_augmented
from services.errors.validation import DimensionMismatchError, InputError, KernelSpecError
from services.kernels.models import RealGaussianKernel, RealKernelSpec, SeparateRealImagKernel
from services.regression.metrics import MSE_DB_FLOOR, mean_squared_error, mse_db
from services.regression.models import RidgeConfig, WrkhsModel
from services.regression.wrkhs import (
    fit,
    fit_augmented,
    fit_composite,
    fit_srkhs,
    predict,
    predict_composite,
    solve_augmented,
)
from tests.conftest import KERNEL_ZOO, random_complex


def random_problem(rng, n=None, d=None):
    n = n or int(rng.integers(5, 31))
    d = d or int(rng.integers(1, 4))
    return ComplexDataset(X=random_complex(rng, n, d, scale=0.7), y=random_complex(rng, n))


def test_fit_composite_scalar_ridge():
    data = ComplexDataset(X=[[0j]], y=[1 + 1j])
    alpha_com = fit_composite(data, RealGaussianKernel(gamma=1.0), ridge=1.0)
    assert np.allclose(alpha_com.values, [0.5, 0.5])
    zero = ComplexDataset(X=[[0j], [1j]], y=[0, 0])
    assert np.array_equal(fit_composite(zero, RealGaussianKernel(gamma=1.0), ridge=0.1).values, np.zeros(4))


def test_augmented_closed_form_single_sample():
    # k = 2, k~ = 1 at x = x'
    spec = SeparateRealImagKernel(rr=RealKernelSpec(gamma=1.0, scale=1.5), jj=RealKernelSpec(gamma=1.0, scale=0.5))
    y = 1 + 2j
    data = ComplexDataset(X=[[0.3 - 0.2j]], y=[y])
    expected = (2.5 * y - np.conj(y)) / (2.5**2 - 1)
    for method in ("direct", "schur"):
        assert fit_augmented(data, spec, 0.5, method=method)[0] == pytest.approx(expected, abs=1e-14)
    model = fit(data, spec, 0.5)
    assert predict(model, data.X)[0] == pytest.approx(2 * expected + np.conj(expected), abs=1e-14)


def test_null_pseudo_kernel_reduces_to_srkhs(rng):
    data = random_problem(rng, n=15, d=2)
    spec = RealGaussianKernel(gamma=1.0)
    srkhs = fit_srkhs(data, spec, 0.1)
    for method in ("direct", "schur"):
        assert np.allclose(fit_augmented(data, spec, 0.1, method=method), srkhs, atol=1e-10)


def test_srkhs_refuses_pseudo_kernel(rng):
    with pytest.raises(KernelSpecError):
        fit_srkhs(random_problem(rng), KERNEL_ZOO["separate_real_imag"], 0.1)


def test_srkhs_identity_gram():
    # points far apart relative to the width give K = I exactly
    data = ComplexDataset(X=[[0j], [100], [200]], y=[1 + 1j, -2j, 3])
    alpha = fit_srkhs(data, RealGaussianKernel(gamma=0.01), 0.0)
    assert np.array_equal(alpha, data.y)


def test_srkhs_real_kernel_is_two_real_ridge_solves(rng):
    data = random_problem(rng, n=12, d=2)
    spec = RealGaussianKernel(gamma=1.5)
    A = spec.real_matrix(data.X, data.X) + 0.2 * np.eye(12)
    alpha = fit_srkhs(data, spec, 0.2)
    assert np.allclose(alpha.real, np.linalg.solve(A, data.y.real), atol=1e-10)
    assert np.allclose(alpha.imag, np.linalg.solve(A, data.y.imag), atol=1e-10)

    real_data = ComplexDataset(X=data.X, y=data.y.real)
    assert np.allclose(fit_srkhs(real_data, spec, 0.2).imag, 0, atol=1e-15)


def test_three_fit_paths_agree(rng):
    specs = list(KERNEL_ZOO.values())
    for trial in range(50):
        spec = specs[trial % len(specs)]
        data = random_problem(rng)
        X_star = random_complex(rng, 7, data.d, scale=0.7)
        by_composite = predict_composite(data.X, spec, fit_composite(data, spec, 0.1), X_star)
        by_direct = predict(fit(data, spec, 0.1, path="direct"), X_star)
        by_schur = predict(fit(data, spec, 0.1, path="schur"), X_star)
        by_composite_path = predict(fit(data, spec, 0.1, path="composite"), X_star)
        assert np.max(np.abs(by_composite - by_direct)) <= 1e-8, spec.family
        assert np.max(np.abs(by_schur - by_direct)) <= 1e-8, spec.family
        assert np.max(np.abs(by_composite_path - by_direct)) <= 1e-8, spec.family


def test_augmented_solution_keeps_conjugate_structure(rng):
    specs = list(KERNEL_ZOO.values())
    for trial in range(50):
        spec = specs[trial % len(specs)]
        data = random_problem(rng)
        for method in ("direct", "schur"):
            assert solve_augmented(data, spec, 0.1, method=method).conjugate_gap() <= 1e-9


def test_composite_coefficients_map_to_augmented(rng, kernel_spec):
    data = random_problem(rng, n=12, d=2)
    via_composite = composite_to_augmented(fit_composite(data, kernel_spec, 0.1)).head
    assert np.allclose(via_composite, fit_augmented(data, kernel_spec, 0.1), atol=1e-9)


def test_interpolation_without_ridge():
    X = np.arange(6)[:, None] * (1.0 + 0.5j)
    y = np.array([1, -1j, 2 + 1j, 0.5, -3, 1j])
    model = fit(ComplexDataset(X=X, y=y), RealGaussianKernel(gamma=0.5), 0.0, path="srkhs")
    assert np.allclose(predict(model, X), y, atol=1e-10)


def test_training_error_grows_with_ridge(rng):
    data = random_problem(rng, n=25, d=2)
    for spec, path in ((RealGaussianKernel(gamma=1.0), "srkhs"), (KERNEL_ZOO["separate_real_imag"], "direct")):
        errors = [
            mean_squared_error(predict(fit(data, spec, ridge, path=path), data.X), data.y)
            for ridge in (1e-3, 1e-2, 0.1, 1.0, 10.0)
        ]
        assert all(a <= b + 1e-15 for a, b in zip(errors, errors[1:]))


@pytest.fixture
def distinct_parts_dataset():
    """White-noise real part next to a smooth, large imaginary part."""
    rng = np.random.default_rng(7)
    x = np.linspace(-10, 10, 20)
    y = rng.standard_normal(20) + 1j * 5 * np.sin(0.2 * x)
    return ComplexDataset(X=x[:, None], y=y)


def test_widely_kernel_beats_every_strict_gaussian(distinct_parts_dataset):
    data = distinct_parts_dataset
    ridge = 0.1
    widely = SeparateRealImagKernel(rr=RealKernelSpec(gamma=0.05), jj=RealKernelSpec(gamma=20.0))
    widely_db = mse_db(predict(fit(data, widely, ridge), data.X), data.y)
    strict_db = min(
        mse_db(predict(fit(data, RealGaussianKernel(gamma=gamma), ridge, path="srkhs"), data.X), data.y)
        for gamma in (0.05, 20.0)
    )
    assert strict_db - widely_db >= 3.0


def test_mse_db_values():
    truth = np.array([1 + 1j, 2, -3j])
    assert mse_db(truth, truth) == MSE_DB_FLOOR
    assert mse_db(truth + 1, truth) == pytest.approx(0.0)
    assert mse_db(truth + 0.1j, truth) == pytest.approx(-20.0)
    with pytest.raises(InputError):
        mse_db([], [])
    with pytest.raises(DimensionMismatchError):
        mse_db([1, 2], [1])


def test_predict_checks_dimension(rng):
    data = random_problem(rng, n=5, d=2)
    model = fit(data, RealGaussianKernel(), 0.1)
    with pytest.raises(DimensionMismatchError):
        predict(model, np.zeros((2, 3)))


def test_model_and_ridge_validation():
    with pytest.raises(InputError):
        RidgeConfig(-1.0)
    with pytest.raises(DimensionMismatchError):
        WrkhsModel(X=np.zeros((3, 1)), kernel=RealGaussianKernel(), ridge=0.1, alpha=np.zeros(2))
    with pytest.raises(InputError):
        WrkhsModel(X=np.zeros((1, 1)), kernel=RealGaussianKernel(), ridge=0.1, alpha=[np.nan])


def test_unknown_fit_path(rng):
    with pytest.raises(InputError):
        fit(random_problem(rng), RealGaussianKernel(), 0.1, path="lsqr")
