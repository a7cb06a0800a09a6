"""Trial-averaged WRKLS equalization runs."""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Optional, Sequence

import numpy as np
from tqdm import tqdm

from core.config import config as cfg
from services.algebra.models import ComplexDataset
from services.channel.channel_sim import simulate_stream
from services.channel.models import EqualizationConfig, EqualizationResult
from services.online.wrkls import OnlineModel
from services.random_streams import make_rng, trial_seed

logger = logging.getLogger(__name__)


def trial_dataset(config: EqualizationConfig, trial: int) -> ComplexDataset:
    seed = trial_seed(config.seed, trial)
    return simulate_stream(config.channel, make_rng(seed, "source"), make_rng(seed, "noise"))


def stream_errors(dataset: ComplexDataset, config: EqualizationConfig, budget: Optional[int]):
    """Squared a-priori errors |ŷ(n) - s(n)|^2 along the stream and the final dictionary size"""
    model = OnlineModel(config.kernel, config.ridge, budget, max_samples=dataset.n)
    errors = np.empty(dataset.n)
    for i in range(dataset.n):
        prediction, _ = model.observe(dataset.X[i], dataset.y[i])
        errors[i] = abs(prediction - dataset.y[i]) ** 2
    return errors, model.size


def cumulative_mean(errors: np.ndarray) -> np.ndarray:
    return np.cumsum(errors) / np.arange(1, errors.size + 1)


def run_equalization_budgets(
    config: EqualizationConfig,
    budgets: Sequence[Optional[int]],
    threads: Optional[int] = None,
) -> Dict[Optional[int], EqualizationResult]:
    """Run every budget on the same trial streams; trials run in parallel"""
    threads = threads or cfg.THREADS
    budgets = list(budgets)

    def run_trial(trial: int):
        dataset = trial_dataset(config, trial)
        return [stream_errors(dataset, config, budget) for budget in budgets]

    logger.info(
        f"equalization: {config.trials} trials x {config.channel.n} samples, "
        f"rho={config.channel.rho:.4f}, budgets={budgets}, threads={threads}"
    )
    with ThreadPoolExecutor(max_workers=threads) as executor:
        outcomes = list(
            tqdm(
                executor.map(run_trial, range(config.trials)),
                total=config.trials,
                desc="trials",
                disable=not cfg.PROGRESS,
            )
        )

    results = {}
    for index, budget in enumerate(budgets):
        # trial-ordered reduction keeps the average bit-reproducible
        curves = [cumulative_mean(outcome[index][0]) for outcome in outcomes]
        total = np.zeros_like(curves[0])
        for curve in curves:
            total += curve
        results[budget] = EqualizationResult(
            curve=total / config.trials,
            trials=config.trials,
            budget=budget,
            final_dictionary_sizes=tuple(outcome[index][1] for outcome in outcomes),
        )
        logger.info(f"budget={budget}: final averaged MSE {results[budget].final_mse_db:.2f} dB")
    return results


def run_equalization(config: EqualizationConfig, threads: Optional[int] = None) -> EqualizationResult:
    return run_equalization_budgets(config, [config.budget], threads=threads)[config.budget]
