from dataclasses import dataclass, field
from typing import Dict

import numpy as np
import pandas as pd

from services.errors.validation import InputError

GRID_COLUMNS = ["x_r", "x_j", "pred_r", "pred_j", "true_r", "true_j"]


@dataclass(frozen=True)
class SyntheticConfig:
    """One synthetic regression run; defaults are the published settings."""
    experiment: int = 1
    n: int = 200
    input_range: float = 5.0
    ridge: float = 1e-6
    grid_resolution: int = 101
    seed: int = 0
    gamma_r: float = 1.0
    gamma_j: float = 3.5
    gamma: float = 2.0
    omega: float = 0.3

    def __post_init__(self):
        if self.experiment not in (1, 2):
            raise InputError(f"experiment must be 1 or 2, got {self.experiment}")
        if self.n < 1:
            raise InputError(f"n must be >= 1, got {self.n}")
        if self.grid_resolution < 2:
            raise InputError(f"grid resolution must be >= 2, got {self.grid_resolution}")
        if not np.isfinite(self.input_range) or self.input_range <= 0:
            raise InputError(f"input range must be positive, got {self.input_range}")
        if self.seed < 0:
            raise InputError(f"seed must be non-negative, got {self.seed}")
        if not 0 < self.omega < 1:
            raise InputError(f"omega must lie in (0, 1), got {self.omega}")


@dataclass
class SyntheticResult:
    """Grid MSE of the WRKHS fit and of its null-pseudo-kernel ablation"""
    config: SyntheticConfig
    wrkhs_mse_db: float
    ablation_mse_db: float
    grids: Dict[str, pd.DataFrame] = field(default_factory=dict)

    @property
    def ablation_key(self) -> str:
        return "null_pseudo_mse_db" if self.config.experiment == 1 else "srkhs_mse_db"

    @property
    def gap_db(self) -> float:
        return self.ablation_mse_db - self.wrkhs_mse_db

    def as_dict(self) -> Dict[str, float]:
        return {"wrkhs_mse_db": self.wrkhs_mse_db, self.ablation_key: self.ablation_mse_db}
