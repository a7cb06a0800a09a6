import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from services.algebra.models import ComplexDataset
from services.errors.validation import DatasetParseError, DimensionMismatchError

PathLike = Union[str, Path]


def dataset_columns(d: int, targets: bool = True) -> List[str]:
    columns = [f"x_re_{i}" for i in range(d)] + [f"x_im_{i}" for i in range(d)]
    return columns + ["y_re", "y_im"] if targets else columns


def provenance_comment(metadata: Dict[str, object]) -> str:
    """'# key=value,key=value' line carried at the top of generated CSV files"""
    return "# " + ",".join(f"{key}={value}" for key, value in metadata.items())


class FileProcessor:
    """CSV I/O for datasets, predictions and benchmark tables.

    Relative paths resolve against `base_dir` when one is given, otherwise
    against the working directory.
    """

    def __init__(self, base_dir: Optional[PathLike] = None):
        self.base_dir = Path(base_dir) if base_dir is not None else None
        self.logger = logging.getLogger(__name__)

    def resolve(self, path: PathLike) -> Path:
        path = Path(path)
        if self.base_dir is not None and not path.is_absolute():
            path = self.base_dir / path
        return path

    def _data_lines(self, path: Path) -> List[int]:
        """1-based file line of the header and of every data row"""
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError as e:
            raise DatasetParseError(f"dataset file not found: {path}") from e
        except UnicodeDecodeError as e:
            raise DatasetParseError(f"dataset is not UTF-8: {e}") from e
        return [
            number
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith("#")
        ]

    def _read_table(self, path: Path) -> Tuple[pd.DataFrame, List[int]]:
        lines = self._data_lines(path)
        if not lines:
            raise DatasetParseError(f"dataset {path} is empty", line=1)
        try:
            df = pd.read_csv(
                path,
                comment="#",
                dtype=str,
                keep_default_na=False,
                skip_blank_lines=True,
                on_bad_lines="error",
            )
        except pd.errors.ParserError as e:
            raise DatasetParseError(f"malformed CSV: {e}") from e
        return df, lines

    def _numeric(self, df: pd.DataFrame, columns: List[str], lines: List[int]) -> np.ndarray:
        # float() parsing of the original text keeps written values bit-exact
        raw = df[columns]
        values = np.empty(raw.shape, dtype=np.float64)
        for j, column in enumerate(columns):
            cells = raw[column].str.strip()
            parsed = pd.to_numeric(cells, errors="coerce")
            bad = ~np.isfinite(parsed.to_numpy(dtype=np.float64))
            if bad.any():
                row = int(np.flatnonzero(bad)[0])
                raise DatasetParseError(
                    f"column {column!r} has non-numeric value {cells.iloc[row]!r}", line=lines[row + 1]
                )
            values[:, j] = cells.to_numpy().astype(np.float64)
        return values

    @staticmethod
    def _dimension(header: List[str], targets: bool) -> int:
        inputs = [name for name in header if name.startswith("x_re_")]
        d = len(inputs)
        expected = dataset_columns(d, targets)
        if d == 0 or header[: len(expected)] != expected or (targets and len(header) != len(expected)):
            raise DatasetParseError(
                f"header must be {','.join(dataset_columns(max(d, 1), targets))}, got {','.join(header)}",
                line=1,
            )
        return d

    def read_dataset(self, path: PathLike) -> ComplexDataset:
        """Dataset CSV with columns x_re_0..x_re_{d-1}, x_im_0..x_im_{d-1}, y_re, y_im"""
        path = self.resolve(path)
        df, lines = self._read_table(path)
        header = [str(name).strip() for name in df.columns]
        d = self._dimension(header, targets=True)
        if df.empty:
            raise DatasetParseError("dataset has no samples", line=lines[0] + 1)
        df.columns = header
        values = self._numeric(df, header, lines)
        X = values[:, :d] + 1j * values[:, d : 2 * d]
        y = values[:, 2 * d] + 1j * values[:, 2 * d + 1]
        self.logger.info(f"read {len(y)} samples with d={d} from {path}")
        return ComplexDataset(X=X, y=y)

    def read_inputs(self, path: PathLike) -> np.ndarray:
        """Input matrix from a CSV with x_* columns; target columns, if present, are ignored"""
        path = self.resolve(path)
        df, lines = self._read_table(path)
        header = [str(name).strip() for name in df.columns]
        d = self._dimension(header, targets=False)
        if df.empty:
            raise DatasetParseError("input file has no rows", line=lines[0] + 1)
        df.columns = header
        values = self._numeric(df, dataset_columns(d, targets=False), lines)
        return values[:, :d] + 1j * values[:, d:]

    def write_csv(self, df: pd.DataFrame, path: PathLike, metadata: Optional[Dict[str, object]] = None) -> Path:
        """Write a frame with shortest round-trip float formatting and an optional provenance line"""
        path = self.resolve(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            if metadata:
                f.write(provenance_comment(metadata) + "\n")
            df.to_csv(f, index=False, lineterminator="\n")
        self.logger.info(f"wrote {len(df)} rows to {path}")
        return path

    def write_dataset(self, data: ComplexDataset, path: PathLike, metadata: Optional[Dict[str, object]] = None) -> Path:
        frame = inputs_frame(data.X)
        frame["y_re"] = data.y.real
        frame["y_im"] = data.y.imag
        return self.write_csv(frame, path, metadata)

    def write_predictions(
        self, X: np.ndarray, prediction: np.ndarray, path: PathLike, metadata: Optional[Dict[str, object]] = None
    ) -> Path:
        if X.shape[0] != np.size(prediction):
            raise DimensionMismatchError(f"{X.shape[0]} inputs but {np.size(prediction)} predictions")
        frame = inputs_frame(X)
        frame["pred_re"] = np.real(prediction)
        frame["pred_im"] = np.imag(prediction)
        return self.write_csv(frame, path, metadata)


def inputs_frame(X: np.ndarray) -> pd.DataFrame:
    X = np.asarray(X, dtype=np.complex128)
    d = X.shape[1]
    data = {f"x_re_{i}": X[:, i].real for i in range(d)}
    data.update({f"x_im_{i}": X[:, i].imag for i in range(d)})
    return pd.DataFrame(data, columns=dataset_columns(d, targets=False))
