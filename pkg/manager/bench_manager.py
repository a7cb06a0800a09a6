import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd

from dto.requests.bench_request import EqualizationRequest, SyntheticRequest
from dto.responses.bench_response import BenchSummary
from services.channel.equalizer import run_equalization_budgets
from services.errors.validation import InputError
from services.processors.file_processor import FileProcessor
from services.synthetic.experiments import run_experiment

BENCHMARKS = ("synthetic1", "synthetic2", "equalization")


def budget_label(budget: Optional[int]) -> str:
    return "all" if budget is None else str(budget)


class BenchManager:
    """Runs a benchmark from its JSON config and writes reproducible outputs.

    Every CSV starts with a `# config_hash=...,seed=...` line and the summary
    JSON carries the same two fields; nothing time-dependent is written.
    """

    def __init__(self, out_dir: Union[str, Path]):
        self.files = FileProcessor(out_dir)
        self.logger = logging.getLogger(__name__)

    def run(self, benchmark: str, document: Optional[str] = None, seed: Optional[int] = None) -> BenchSummary:
        if benchmark == "equalization":
            summary = self.run_equalization(document, seed)
        elif benchmark in ("synthetic1", "synthetic2"):
            summary = self.run_synthetic(int(benchmark[-1]), document, seed)
        else:
            raise InputError(f"unknown benchmark {benchmark!r}; expected one of {BENCHMARKS}")
        self._write_summary(summary)
        return summary

    def _write_summary(self, summary: BenchSummary):
        target = self.files.resolve("summary.json")
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(summary.model_dump_json(indent=2) + "\n", encoding="utf-8")
        self.logger.info(f"summary written to {target}")

    def run_synthetic(self, experiment: int, document: Optional[str], seed: Optional[int]) -> BenchSummary:
        request = SyntheticRequest.load(document, seed)
        request = request.model_copy(update={"experiment": experiment})
        config_hash = request.config_hash()
        metadata = {"config_hash": config_hash, "seed": request.seed}

        result = run_experiment(request.to_config())
        outputs: List[str] = []
        for name, frame in result.grids.items():
            filename = f"grid_{name}.csv"
            self.files.write_csv(frame, filename, metadata)
            outputs.append(filename)

        results = result.as_dict()
        results["gap_db"] = result.gap_db
        return BenchSummary(
            benchmark=f"synthetic{experiment}",
            config_hash=config_hash,
            seed=request.seed,
            config=request.model_dump(mode="json"),
            results=results,
            outputs=outputs,
        )

    def run_equalization(self, document: Optional[str], seed: Optional[int]) -> BenchSummary:
        request = EqualizationRequest.load(document, seed).resolved()
        config_hash = request.config_hash()
        metadata = {"config_hash": config_hash, "seed": request.seed}

        outcomes = run_equalization_budgets(request.to_config(), request.budgets)
        outputs: List[str] = []
        results: Dict[str, float] = {}
        for budget, result in outcomes.items():
            label = budget_label(budget)
            frame = pd.DataFrame(
                {
                    "sample_index": np.arange(1, result.curve.size + 1),
                    "avg_mse": result.curve,
                    "avg_mse_db": result.curve_db,
                }
            )
            filename = f"curve_budget_{label}.csv"
            self.files.write_csv(frame, filename, metadata)
            outputs.append(filename)
            results[f"final_mse_db_{label}"] = result.final_mse_db
            results[f"mean_dictionary_size_{label}"] = float(np.mean(result.final_dictionary_sizes))

        return BenchSummary(
            benchmark="equalization",
            config_hash=config_hash,
            seed=request.seed,
            config=request.model_dump(mode="json"),
            results=results,
            outputs=outputs,
        )
