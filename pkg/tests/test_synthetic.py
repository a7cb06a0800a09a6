from dataclasses import replace

import numpy as np
import pytest

from services.errors.validation import InputError
from services.kernels.gram import kernel_pair
from services.kernels.models import RealGaussianKernel, RealKernelSpec
from services.regression.wrkhs import fit, predict
from services.synthetic.experiments import (
    draw_training,
    evaluation_grid,
    experiment_kernels,
    run_exp1,
    run_exp2,
    run_seed_sweep,
)
from services.synthetic.models import GRID_COLUMNS, SyntheticConfig
from services.synthetic.targets import target_exp1, target_exp2


def test_exp1_target_at_origin():
    y = target_exp1(0j)
    assert y.real == pytest.approx(1.0, abs=1e-15)
    # sinc(-1.5) = sin(-1.5π) / (-1.5π)
    assert y.imag == pytest.approx(-2 / (3 * np.pi))


def test_exp1_target_structure(rng):
    a, a2, b = rng.uniform(-5, 5, 3)
    assert target_exp1(a + 1j * b).imag == target_exp1(a2 + 1j * b).imag
    points = rng.uniform(-5, 5, (50, 2))
    forward = target_exp1(points[:, 0] + 1j * points[:, 1])
    swapped = target_exp1(points[:, 1] + 1j * points[:, 0])
    assert np.allclose(forward.real, swapped.real, atol=1e-15)


def test_exp2_target():
    assert target_exp2(0j) == pytest.approx(1.03 + 0.4j)
    x = np.array([0.5 - 2j, 3 + 1j])
    z_r = np.sinc(0.5 * x.real) * np.sinc(0.5 * x.imag)
    z_j = 0.1 * np.sinc(0.3 * x.imag)
    assert np.allclose(target_exp2(x, omega=0.0), z_r + 1j * z_j)
    y = target_exp2(x)
    assert np.allclose(y.real - z_r, 0.3 * z_j)
    assert np.allclose(y.imag - z_j, 0.3 * z_r)


def test_training_draw_is_seeded_and_in_range():
    config = SyntheticConfig(n=500, seed=4)
    data = draw_training(config, target_exp1)
    assert data.n == 500 and data.d == 1
    assert np.all(np.abs(data.X.real) <= 5) and np.all(np.abs(data.X.imag) <= 5)
    assert np.array_equal(data.X, draw_training(config, target_exp1).X)
    assert np.array_equal(data.y, target_exp1(data.X[:, 0]))


def test_evaluation_grid():
    points = evaluation_grid(SyntheticConfig(grid_resolution=101))
    assert points.size == 101 * 101
    assert points[0] == -5 - 5j and points[-1] == 5 + 5j


def test_config_validation():
    with pytest.raises(InputError):
        SyntheticConfig(experiment=3)
    with pytest.raises(InputError):
        SyntheticConfig(grid_resolution=1)
    with pytest.raises(InputError):
        SyntheticConfig(n=0)


def test_exp2_ablation_is_twice_the_base_kernel(rng):
    config = SyntheticConfig(experiment=2, n=30, ridge=1e-3)
    wrkhs, ablation = experiment_kernels(config)
    assert ablation.has_null_pseudo_kernel and not wrkhs.has_null_pseudo_kernel
    data = draw_training(config, target_exp2)
    K, K_pseudo = kernel_pair(ablation, data.X, data.X)
    base = RealGaussianKernel(gamma=2.0).real_matrix(data.X, data.X)
    assert np.allclose(K, 2 * base, atol=1e-15) and np.allclose(K_pseudo, 0)
    alpha = fit(data, ablation, config.ridge, path="srkhs").alpha
    assert np.allclose((2 * base + config.ridge * np.eye(30)) @ alpha, data.y, atol=1e-8)


def test_exp1_run_produces_grids_and_ordering():
    result = run_exp1(SyntheticConfig(seed=0))
    assert set(result.as_dict()) == {"wrkhs_mse_db", "null_pseudo_mse_db"}
    assert result.wrkhs_mse_db < result.ablation_mse_db
    for frame in result.grids.values():
        assert list(frame.columns) == GRID_COLUMNS
        assert len(frame) == 101 * 101


def test_exp2_run_small():
    result = run_exp2(SyntheticConfig(n=60, grid_resolution=21, seed=3))
    assert set(result.as_dict()) == {"wrkhs_mse_db", "srkhs_mse_db"}
    assert np.isfinite(result.wrkhs_mse_db) and np.isfinite(result.ablation_mse_db)
    assert np.allclose(result.grids["wrkhs"]["true_r"], result.grids["ablation"]["true_r"])


def test_seed_sweep_keeps_seed_order():
    config = SyntheticConfig(n=40, grid_resolution=11)
    results = run_seed_sweep(config, [2, 0, 1], threads=2)
    assert [r.config.seed for r in results] == [2, 0, 1]
    assert results[1].wrkhs_mse_db == run_exp1(config).wrkhs_mse_db


def ridge_smoother(K_star, K, ridge, y):
    return K_star @ np.linalg.solve(K + ridge * np.eye(K.shape[0]), y)


def test_exp1_parts_decouple_into_two_real_fits():
    config = SyntheticConfig(n=40, ridge=1e-3, grid_resolution=11)
    data = draw_training(config, target_exp1)
    wrkhs, ablation = experiment_kernels(config)
    points = evaluation_grid(config)[:, None]
    wrkhs_pred = np.asarray(predict(fit(data, wrkhs, config.ridge), points))
    ablation_pred = np.asarray(predict(fit(data, ablation, config.ridge, path="srkhs"), points))
    # both fits share the real-part kernel, so only the imaginary part can differ
    assert np.allclose(wrkhs_pred.real, ablation_pred.real, atol=1e-8)
    wide = RealKernelSpec(gamma=config.gamma_j)
    K, K_star = 2 * wide.matrix(data.X, data.X), 2 * wide.matrix(points, data.X)
    assert np.allclose(wrkhs_pred.imag, ridge_smoother(K_star, K, config.ridge, data.y.imag), atol=1e-8)


def test_exp2_splits_into_sum_and_difference_channels():
    config = SyntheticConfig(experiment=2, n=40, ridge=1e-2, grid_resolution=11)
    data = draw_training(config, lambda x: target_exp2(x, omega=config.omega))
    wrkhs, _ = experiment_kernels(config)
    points = evaluation_grid(config)[:, None]
    pred = np.asarray(predict(fit(data, wrkhs, config.ridge), points))
    base = RealGaussianKernel(gamma=config.gamma)
    K, K_star = base.real_matrix(data.X, data.X), base.real_matrix(points, data.X)
    u = ridge_smoother(K_star, K, config.ridge / (2 * (1 + config.omega)), data.y.real + data.y.imag)
    v = ridge_smoother(K_star, K, config.ridge / (2 * (1 - config.omega)), data.y.real - data.y.imag)
    assert np.allclose(pred.real + pred.imag, u, atol=1e-7)
    assert np.allclose(pred.real - pred.imag, v, atol=1e-7)


def test_exp1_error_does_not_grow_with_more_samples():
    def mean_db(n):
        config = SyntheticConfig(n=n, grid_resolution=41)
        return np.mean([run_exp1(replace(config, seed=seed)).wrkhs_mse_db for seed in range(3)])

    assert mean_db(400) <= mean_db(200)


@pytest.mark.slow
def test_exp1_wrkhs_beats_ablation_on_every_seed():
    results = run_seed_sweep(SyntheticConfig(experiment=1), range(10))
    assert [r.config.seed for r in results] == list(range(10))
    for result in results:
        assert np.isfinite(result.wrkhs_mse_db)
        assert result.gap_db > 0
