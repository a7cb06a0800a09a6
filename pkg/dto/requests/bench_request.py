import hashlib
import json
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from core.config import config as cfg
from dto.requests.kernel_request import KernelRequest
from services.channel.models import ChannelConfig, EqualizationConfig
from services.errors.validation import ConfigSchemaError
from services.kernels.models import RealGaussianKernel
from services.synthetic.models import SyntheticConfig

ComplexPair = Tuple[float, float]


def _setting(key: str):
    return lambda: cfg.get(key)


def _pairs(values) -> Tuple[complex, ...]:
    return tuple(complex(re, im) for re, im in values)


class BenchRequest(BaseModel):
    """Common behavior of benchmark configs: strict fields and a stable hash"""
    model_config = ConfigDict(extra="forbid")

    seed: int = Field(default=0, ge=0)

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON of the fully resolved config"""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    @classmethod
    def load(cls, document: Optional[str] = None, seed: Optional[int] = None):
        """Parse a JSON config (empty means all defaults); a given seed overrides the file's"""
        try:
            request = cls.model_validate_json(document) if document else cls()
            if seed is not None:
                request = cls.model_validate({**request.model_dump(), "seed": seed})
        except ValidationError as e:
            raise ConfigSchemaError(f"invalid {cls.__name__} document: {e}") from e
        return request


class SyntheticRequest(BenchRequest):
    experiment: Literal[1, 2] = 1
    seed: int = Field(default_factory=_setting("synthetic.seed"), ge=0)
    n: int = Field(default_factory=_setting("synthetic.n"), ge=1)
    input_range: float = Field(default_factory=_setting("synthetic.input_range"), gt=0)
    ridge: float = Field(default_factory=_setting("synthetic.ridge"), ge=0)
    grid_resolution: int = Field(default_factory=_setting("synthetic.grid_resolution"), ge=2)
    gamma_r: float = Field(default_factory=_setting("synthetic.exp1.gamma_r"), gt=0)
    gamma_j: float = Field(default_factory=_setting("synthetic.exp1.gamma_j"), gt=0)
    gamma: float = Field(default_factory=_setting("synthetic.exp2.gamma"), gt=0)
    omega: float = Field(default_factory=_setting("synthetic.exp2.omega"), gt=0, lt=1)

    def to_config(self) -> SyntheticConfig:
        return SyntheticConfig(**self.model_dump())


class EqualizationRequest(BenchRequest):
    """Equalization benchmark; a preset fills rho, kernel width and ridge unless given"""
    preset: Literal["circular", "noncircular"] = "circular"
    seed: int = Field(default_factory=_setting("equalization.seed"), ge=0)
    rho: Optional[float] = Field(default=None, gt=0, lt=1)
    gamma: Optional[float] = Field(default=None, gt=0)
    ridge: Optional[float] = Field(default=None, gt=0)
    kernel: Optional[KernelRequest] = None
    n: int = Field(default_factory=_setting("equalization.n"), ge=2)
    trials: int = Field(default_factory=_setting("equalization.trials"), ge=1)
    snr_db: float = Field(default_factory=_setting("equalization.snr_db"))
    filter_length: int = Field(default_factory=_setting("equalization.filter_length"), ge=1)
    delay: int = Field(default_factory=_setting("equalization.delay"), ge=0)
    source_scale: float = Field(default_factory=_setting("equalization.source_scale"), gt=0)
    taps: List[ComplexPair] = Field(default_factory=_setting("equalization.taps"), min_length=2, max_length=2)
    nonlinearity: List[ComplexPair] = Field(
        default_factory=_setting("equalization.nonlinearity"), min_length=2, max_length=2
    )
    budgets: List[Optional[int]] = Field(
        default_factory=lambda: [cfg.get("equalization.budget")], min_length=1,
        description="Dictionary budgets to compare on the same trial streams; null means unbounded",
    )

    @field_validator("budgets")
    def validate_budgets(cls, v):
        if any(budget is not None and budget < 1 for budget in v):
            raise ValueError("budgets must be >= 1 or null")
        if len(set(v)) != len(v):
            raise ValueError("budgets must be distinct")
        return v

    def resolved(self) -> "EqualizationRequest":
        """Copy with the preset values filled in, so the hash covers what actually runs"""
        preset = cfg.get(f"equalization.presets.{self.preset}")
        return self.model_copy(
            update={
                "rho": self.rho if self.rho is not None else preset["rho"],
                "gamma": self.gamma if self.gamma is not None else preset["gamma"],
                "ridge": self.ridge if self.ridge is not None else preset["ridge"],
            }
        )

    def to_config(self) -> EqualizationConfig:
        request = self.resolved()
        channel = ChannelConfig(
            taps=_pairs(request.taps),
            nonlinearity=_pairs(request.nonlinearity),
            source_scale=request.source_scale,
            rho=request.rho,
            snr_db=request.snr_db,
            filter_length=request.filter_length,
            delay=request.delay,
            n=request.n,
        )
        kernel = request.kernel.to_spec() if request.kernel else RealGaussianKernel(gamma=request.gamma)
        return EqualizationConfig(
            channel=channel,
            kernel=kernel,
            ridge=request.ridge,
            budget=request.budgets[0],
            trials=request.trials,
            seed=request.seed,
        )
