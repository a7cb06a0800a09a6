from typing import Any, Dict, List, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from services.errors.validation import KernelSpecError
from services.kernels.models import (
    ComplexGaussianKernel,
    IndependentKernel,
    KernelSpec,
    RealGaussianKernel,
    RealImagBlockKernel,
    RealKernelSpec,
    SeparateRealImagKernel,
    SumOfSeparableKernel,
)

KernelFamily = Literal[
    "real_gaussian",
    "complex_gaussian",
    "independent",
    "real_imag_blocks",
    "separate_real_imag",
    "sum_of_separable",
]


class GaussianParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    gamma: float = Field(..., gt=0, description="Gaussian width: k = scale * exp(-|x - x'|^2 / gamma)")
    scale: float = Field(default=1.0, ge=0, description="Real multiplier of the block")

    def to_spec(self) -> RealKernelSpec:
        return RealKernelSpec(gamma=self.gamma, scale=self.scale)

    @classmethod
    def from_spec(cls, spec: RealKernelSpec) -> "GaussianParams":
        return cls(gamma=spec.gamma, scale=spec.scale)


class BlockParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rr: GaussianParams
    jj: GaussianParams
    rj: GaussianParams = Field(default_factory=lambda: GaussianParams(gamma=1.0, scale=0.0))
    jr: GaussianParams = Field(default_factory=lambda: GaussianParams(gamma=1.0, scale=0.0))


class SeparateParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rr: GaussianParams
    jj: GaussianParams


class SeparableTerm(GaussianParams):
    weight: float = Field(..., gt=0, lt=1, description="Pseudo-kernel weight ω of the term")


class SumOfSeparableParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    terms: List[SeparableTerm] = Field(..., min_length=1)


class KernelRequest(BaseModel):
    """Kernel description as it appears in model files and on the command line

    Attributes:
        family: one of the closed set of kernel families
        params: family parameters; Gaussian families take {"gamma"}, the
            independent kernel {"gamma", "scale"}, block families one
            {"gamma", "scale"} object per block, sum_of_separable a "terms" list
    """
    model_config = ConfigDict(extra="forbid")

    family: KernelFamily
    params: Dict[str, Any] = Field(default_factory=dict)

    def to_spec(self) -> KernelSpec:
        try:
            if self.family in ("real_gaussian", "complex_gaussian"):
                gaussian = GaussianParams.model_validate(self.params)
                if gaussian.scale != 1.0:
                    raise KernelSpecError(f"{self.family} does not take a scale")
                cls = RealGaussianKernel if self.family == "real_gaussian" else ComplexGaussianKernel
                return cls(gamma=gaussian.gamma)
            if self.family == "independent":
                return IndependentKernel(base=GaussianParams.model_validate(self.params).to_spec())
            if self.family == "real_imag_blocks":
                blocks = BlockParams.model_validate(self.params)
                return RealImagBlockKernel(
                    rr=blocks.rr.to_spec(), jj=blocks.jj.to_spec(), rj=blocks.rj.to_spec(), jr=blocks.jr.to_spec()
                )
            if self.family == "separate_real_imag":
                parts = SeparateParams.model_validate(self.params)
                return SeparateRealImagKernel(rr=parts.rr.to_spec(), jj=parts.jj.to_spec())
            terms = SumOfSeparableParams.model_validate(self.params).terms
            return SumOfSeparableKernel(
                terms=tuple((RealKernelSpec(gamma=t.gamma, scale=t.scale), t.weight) for t in terms)
            )
        except ValidationError as e:
            raise KernelSpecError(f"invalid parameters for {self.family}: {e}") from e

    @classmethod
    def from_spec(cls, spec: KernelSpec) -> "KernelRequest":
        if isinstance(spec, (RealGaussianKernel, ComplexGaussianKernel)):
            params = {"gamma": spec.gamma}
        elif isinstance(spec, IndependentKernel):
            params = GaussianParams.from_spec(spec.base).model_dump()
        elif isinstance(spec, RealImagBlockKernel):
            params = {name: GaussianParams.from_spec(getattr(spec, name)).model_dump() for name in ("rr", "jj", "rj", "jr")}
        elif isinstance(spec, SeparateRealImagKernel):
            params = {name: GaussianParams.from_spec(getattr(spec, name)).model_dump() for name in ("rr", "jj")}
        elif isinstance(spec, SumOfSeparableKernel):
            params = {
                "terms": [
                    {"gamma": kernel.gamma, "scale": kernel.scale, "weight": weight} for kernel, weight in spec.terms
                ]
            }
        else:
            raise KernelSpecError(f"unsupported kernel spec: {spec!r}")
        return cls(family=spec.family, params=params)


def parse_kernel(document: str) -> KernelSpec:
    """Kernel spec from a JSON string such as '{"family": "real_gaussian", "params": {"gamma": 0.8}}'"""
    try:
        request = KernelRequest.model_validate_json(document)
    except ValidationError as e:
        raise KernelSpecError(f"invalid kernel document: {e}") from e
    return request.to_spec()
