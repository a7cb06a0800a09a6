import os

# the config singleton reads APP_ENV on first import
os.environ.setdefault('APP_ENV', 'testing')

import numpy as np
import pytest
from pathlib import Path
from core.config import Config
from services.kernels.models import (
    ComplexGaussianKernel,
    IndependentKernel,
    RealGaussianKernel,
    RealImagBlockKernel,
    RealKernelSpec,
    SeparateRealImagKernel,
    SumOfSeparableKernel,
)


@pytest.fixture(scope="session")
def test_config():
    # Set environment to testing
    os.environ['APP_ENV'] = 'testing'
    config = Config()
    yield config


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_complex(rng, *shape, scale=1.0):
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


KERNEL_ZOO = {
    "real_gaussian": RealGaussianKernel(gamma=1.5),
    "complex_gaussian": ComplexGaussianKernel(gamma=4.0),
    "independent": IndependentKernel(base=RealKernelSpec(gamma=0.8)),
    "real_imag_blocks": RealImagBlockKernel(
        rr=RealKernelSpec(gamma=1.2),
        jj=RealKernelSpec(gamma=1.2, scale=0.5),
        rj=RealKernelSpec(gamma=1.2, scale=0.3),
        jr=RealKernelSpec(gamma=1.2, scale=0.3),
    ),
    "separate_real_imag": SeparateRealImagKernel(rr=RealKernelSpec(gamma=0.7), jj=RealKernelSpec(gamma=3.0)),
    "sum_of_separable": SumOfSeparableKernel(
        terms=((RealKernelSpec(gamma=2.0), 0.3), (RealKernelSpec(gamma=0.5), 0.6))
    ),
}


@pytest.fixture(params=sorted(KERNEL_ZOO))
def kernel_spec(request):
    return KERNEL_ZOO[request.param]


@pytest.fixture
def work_dir(tmp_path):
    path = Path(tmp_path) / "work"
    path.mkdir()
    return path
