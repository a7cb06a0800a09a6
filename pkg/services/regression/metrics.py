import numpy as np
from numpy.typing import ArrayLike

from services.errors.validation import DimensionMismatchError, InputError

MSE_DB_FLOOR = -320.0


def mean_squared_error(pred: ArrayLike, truth: ArrayLike) -> float:
    pred = np.asarray(pred, dtype=np.complex128).ravel()
    truth = np.asarray(truth, dtype=np.complex128).ravel()
    if pred.shape != truth.shape:
        raise DimensionMismatchError(f"length mismatch: {pred.size} predictions vs {truth.size} targets")
    if pred.size == 0:
        raise InputError("mean squared error of an empty set is undefined")
    return float(np.mean(np.abs(pred - truth) ** 2))


def to_db(power: float) -> float:
    if power <= 0:
        return MSE_DB_FLOOR
    return max(MSE_DB_FLOOR, 10.0 * float(np.log10(power)))


def mse_db(pred: ArrayLike, truth: ArrayLike) -> float:
    """10 log10 of the mean squared complex error, floored at -320 dB"""
    return to_db(mean_squared_error(pred, truth))
