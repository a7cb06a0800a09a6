import logging
from pathlib import Path
from typing import Dict, Optional, Sequence, Union

import numpy as np
import pandas as pd

from dto.responses.model_response import ModelDocument
from services.algebra.models import as_complex_vector
from services.errors.validation import ConfigSchemaError, DimensionMismatchError, InputError
from services.kernels.gram import kernel_pair
from services.kernels.models import KernelSpec
from services.processors.file_processor import FileProcessor
from services.regression.metrics import mse_db
from services.regression.models import WrkhsModel
from services.regression.wrkhs import fit, predict, resolve_fit_path

SURFACE_COLUMNS = ["x_r", "x_j", "k_re", "k_im", "pk_re", "pk_im"]


class ModelManager:
    def __init__(self, file_processor: Optional[FileProcessor] = None):
        self.files = file_processor or FileProcessor()
        self.logger = logging.getLogger(__name__)

    def fit_file(
        self,
        dataset_path: Union[str, Path],
        kernel: KernelSpec,
        ridge: float,
        model_path: Union[str, Path],
        path: Optional[str] = None,
    ) -> Dict[str, float]:
        """Fit a dataset CSV and write the model JSON

        Returns:
            summary with n, d and the training MSE in dB
        """
        data = self.files.read_dataset(dataset_path)
        path = resolve_fit_path(path)
        model = fit(data, kernel, ridge, path=path)
        document = ModelDocument.from_model(model, path=path)
        target = self.files.resolve(model_path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")

        training = np.asarray(predict(model, data.X))
        summary = {"n": data.n, "d": data.d, "training_mse_db": mse_db(training, data.y)}
        self.logger.info(f"model written to {target}: {summary}")
        return summary

    def load_model(self, model_path: Union[str, Path]) -> WrkhsModel:
        target = self.files.resolve(model_path)
        try:
            document = target.read_text(encoding="utf-8")
        except FileNotFoundError as e:
            raise ConfigSchemaError(f"model file not found: {target}") from e
        return ModelDocument.load(document).to_model()

    def predict_file(
        self, model_path: Union[str, Path], inputs_path: Union[str, Path], out_path: Union[str, Path]
    ) -> np.ndarray:
        model = self.load_model(model_path)
        X = self.files.read_inputs(inputs_path)
        prediction = np.asarray(predict(model, X))
        self.files.write_predictions(X, prediction, out_path)
        return prediction

    @staticmethod
    def _diagonal_pair(kernel: KernelSpec, points: np.ndarray, chunk: int = 256):
        """k(x, x) and k~(x, x) per point, from the diagonals of chunk-sized Gram blocks"""
        k = np.empty(points.shape[0], dtype=np.complex128)
        pk = np.empty(points.shape[0], dtype=np.complex128)
        for start in range(0, points.shape[0], chunk):
            block = points[start : start + chunk]
            K, PK = kernel_pair(kernel, block, block)
            k[start : start + block.shape[0]] = np.diagonal(K)
            pk[start : start + block.shape[0]] = np.diagonal(PK)
        return k, pk

    def kernel_surface(
        self,
        kernel: KernelSpec,
        center: Union[complex, Sequence[complex]] = 0j,
        half_range: float = 5.0,
        resolution: int = 101,
        diagonal: bool = False,
    ) -> pd.DataFrame:
        """k(x, x') and k~(x, x') for scalar x' on a square grid, x fixed at `center`.

        With `diagonal`, the grid point is used for both arguments: k(x', x').
        """
        center = as_complex_vector(np.atleast_1d(center))
        if center.size != 1:
            raise DimensionMismatchError(f"kernel surfaces need scalar inputs (d = 1), got d = {center.size}")
        if resolution < 2:
            raise InputError(f"resolution must be >= 2, got {resolution}")
        if not np.isfinite(half_range) or half_range <= 0:
            raise InputError(f"range must be positive, got {half_range}")

        axis = np.linspace(-half_range, half_range, resolution)
        xr, xj = np.meshgrid(axis, axis, indexing="ij")
        points = (xr + 1j * xj).ravel()[:, None]
        if diagonal:
            k, pk = self._diagonal_pair(kernel, points)
        else:
            k, pk = (block[0] for block in kernel_pair(kernel, center[None, :], points))
        return pd.DataFrame(
            {
                "x_r": points[:, 0].real,
                "x_j": points[:, 0].imag,
                "k_re": k.real,
                "k_im": k.imag,
                "pk_re": pk.real,
                "pk_im": pk.imag,
            },
            columns=SURFACE_COLUMNS,
        )
