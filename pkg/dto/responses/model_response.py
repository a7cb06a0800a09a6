from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from dto.requests.kernel_request import KernelRequest
from services.errors.validation import ConfigSchemaError
from services.regression.models import WrkhsModel

ComplexPair = Tuple[float, float]


def _to_pairs(values: np.ndarray) -> List[ComplexPair]:
    return [(float(v.real), float(v.imag)) for v in np.asarray(values).ravel()]


def _from_pairs(pairs) -> np.ndarray:
    array = np.asarray(pairs, dtype=np.float64).reshape(-1, 2)
    return array[:, 0] + 1j * array[:, 1]


class ModelDocument(BaseModel):
    """Fitted model file

    Complex numbers are [re, im] pairs; floats keep their shortest round-trip
    repr so a reloaded model predicts bit-identically.
    """
    model_config = ConfigDict(extra="forbid")

    kernel: KernelRequest
    ridge: float = Field(..., ge=0)
    path: str = Field(default="direct", description="Fit path the coefficients came from")
    inputs: List[List[ComplexPair]] = Field(..., min_length=1, description="Training inputs, one row per sample")
    alpha: List[ComplexPair] = Field(..., min_length=1, description="Expansion coefficients α")

    @model_validator(mode="after")
    def check_shapes(self):
        if len(self.inputs) != len(self.alpha):
            raise ValueError(f"{len(self.inputs)} inputs but {len(self.alpha)} coefficients")
        if len({len(row) for row in self.inputs}) != 1:
            raise ValueError("input rows must share one dimension")
        return self

    @classmethod
    def from_model(cls, model: WrkhsModel, path: str = "direct") -> "ModelDocument":
        return cls(
            kernel=KernelRequest.from_spec(model.kernel),
            ridge=model.ridge,
            path=path,
            inputs=[_to_pairs(row) for row in model.X],
            alpha=_to_pairs(model.alpha),
        )

    def to_model(self) -> WrkhsModel:
        X = np.stack([_from_pairs(row) for row in self.inputs])
        return WrkhsModel(X=X, kernel=self.kernel.to_spec(), ridge=self.ridge, alpha=_from_pairs(self.alpha))

    @classmethod
    def load(cls, document: str) -> "ModelDocument":
        try:
            return cls.model_validate_json(document)
        except ValidationError as e:
            raise ConfigSchemaError(f"invalid model document: {e}") from e
