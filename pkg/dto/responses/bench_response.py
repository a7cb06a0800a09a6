from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field


class BenchSummary(BaseModel):
    """Summary written next to benchmark outputs

    Attributes:
        benchmark: synthetic1, synthetic2 or equalization
        config_hash: SHA-256 of the canonical resolved config
        seed: base seed all random streams derive from
        config: the resolved config itself
        results: headline numbers (MSE in dB, dictionary sizes)
        outputs: files written, relative to the output directory
    """
    model_config = ConfigDict(extra="forbid")

    benchmark: str
    config_hash: str = Field(..., pattern=r"^[0-9a-f]{64}$")
    seed: int = Field(..., ge=0)
    config: Dict[str, Any]
    results: Dict[str, float]
    outputs: List[str] = Field(default_factory=list)
