from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from services.errors.validation import InputError
from services.kernels.models import KernelSpec, RealGaussianKernel

CIRCULAR_RHO = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class ChannelConfig:
    """Strong nonlinear channel: two-tap filter, cubic memoryless nonlinearity, AWGN."""
    taps: Tuple[complex, complex] = (-0.9 + 0.8j, 0.6 - 0.7j)
    nonlinearity: Tuple[complex, complex] = (0.2 + 0.25j, 0.12 + 0.09j)
    source_scale: float = 0.70
    rho: float = CIRCULAR_RHO
    snr_db: float = 16.0
    filter_length: int = 5
    delay: int = 2
    n: int = 5000

    def __post_init__(self):
        if not 0 < self.rho < 1:
            raise InputError(f"rho must lie in (0, 1), got {self.rho}")
        if self.filter_length < 1:
            raise InputError(f"filter length must be >= 1, got {self.filter_length}")
        if self.delay < 0:
            raise InputError(f"delay must be >= 0, got {self.delay}")
        if self.n <= self.filter_length + self.delay:
            raise InputError(
                f"stream length {self.n} must exceed L + D = {self.filter_length + self.delay}"
            )
        if np.isnan(self.snr_db) or self.snr_db == -np.inf:
            raise InputError(f"snr_db must be a number or +inf, got {self.snr_db}")


@dataclass(frozen=True)
class EqualizationConfig:
    """One equalization benchmark: channel, WRKLS hyperparameters, trials and seeds."""
    channel: ChannelConfig = field(default_factory=ChannelConfig)
    kernel: KernelSpec = field(default_factory=lambda: RealGaussianKernel(gamma=8.92))
    ridge: float = 0.32
    budget: Optional[int] = None
    trials: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise InputError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise InputError(f"seed must be non-negative, got {self.seed}")
        if self.budget is not None and self.budget < 1:
            raise InputError(f"budget must be >= 1 or unbounded, got {self.budget}")


@dataclass
class EqualizationResult:
    """Trial-averaged cumulative-mean MSE curve.

    curve[t] is the mean over trials of (1/(t+1)) Σ_{i<=t} |ŷ_i - s_i|^2.
    """
    curve: np.ndarray
    trials: int
    budget: Optional[int]
    final_dictionary_sizes: Tuple[int, ...] = ()

    @property
    def curve_db(self) -> np.ndarray:
        return 10.0 * np.log10(np.maximum(self.curve, 1e-32))

    @property
    def final_mse_db(self) -> float:
        return float(self.curve_db[-1])
