import functools
import json
import logging
from pathlib import Path
from typing import Optional

import click

from core.config import config as cfg
from dto.requests.kernel_request import parse_kernel
from manager.bench_manager import BENCHMARKS, BenchManager
from manager.model_manager import ModelManager
from services.errors.base import WrkhsError
from services.errors.validation import ConfigSchemaError
from services.processors.file_processor import FileProcessor

logger = logging.getLogger(__name__)

model_manager = ModelManager()


def handle_errors(command):
    """Report library errors on stderr and exit with their code (2 input, 3 numerical)"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except WrkhsError as e:
            logger.debug("command failed", exc_info=True)
            click.echo(f"error: {e}", err=True)
            raise SystemExit(e.exit_code)

    return wrapper


def read_document(value: str) -> str:
    """JSON given inline or as a path to a file"""
    stripped = value.strip()
    if stripped.startswith("{"):
        return stripped
    path = Path(value)
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigSchemaError(f"cannot read JSON document {value!r}: {e}") from e


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Debug logging.")
def cli(verbose: bool):
    """Widely linear complex kernel regression: fit, predict, kernel surfaces and benchmarks."""
    level = logging.DEBUG if verbose or cfg.DEBUG else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


@cli.command()
@click.argument("dataset", type=click.Path(dir_okay=False))
@click.option("--kernel", "kernel_json", required=True, help="Kernel JSON, inline or a file path.")
@click.option("--ridge", type=float, default=lambda: cfg.get("regression.ridge"), show_default="config")
@click.option("--out", "out_model", required=True, type=click.Path(dir_okay=False), help="Model JSON to write.")
@click.option("--path", "fit_path", type=click.Choice(["composite", "direct", "schur", "srkhs"]), default=None)
@handle_errors
def fit(dataset: str, kernel_json: str, ridge: float, out_model: str, fit_path: Optional[str]):
    """Fit a model to a dataset CSV and write it as JSON."""
    kernel = parse_kernel(read_document(kernel_json))
    summary = model_manager.fit_file(dataset, kernel, ridge, out_model, path=fit_path)
    click.echo(json.dumps(summary))


@cli.command()
@click.argument("model", type=click.Path(dir_okay=False))
@click.argument("inputs", type=click.Path(dir_okay=False))
@click.option("--out", "out_csv", required=True, type=click.Path(dir_okay=False))
@handle_errors
def predict(model: str, inputs: str, out_csv: str):
    """Predict the x_* rows of INPUTS with a saved MODEL."""
    prediction = model_manager.predict_file(model, inputs, out_csv)
    click.echo(json.dumps({"rows": int(prediction.size), "out": out_csv}))


@cli.command("kernel-surface")
@click.option("--kernel", "kernel_json", required=True, help="Kernel JSON, inline or a file path.")
@click.option("--center", default="0", show_default=True, help="Fixed scalar input x, e.g. '1+2j'.")
@click.option("--range", "half_range", type=float, default=5.0, show_default=True, help="Grid covers [-range, range]^2.")
@click.option("--resolution", type=int, default=101, show_default=True)
@click.option("--diagonal", is_flag=True, help="Dump k(x', x') instead of k(center, x').")
@click.option("--out", "out_csv", required=True, type=click.Path(dir_okay=False))
@handle_errors
def kernel_surface(kernel_json: str, center: str, half_range: float, resolution: int, diagonal: bool, out_csv: str):
    """Grid of kernel and pseudo-kernel values for plotting."""
    kernel = parse_kernel(read_document(kernel_json))
    try:
        center_value = complex(center.replace(" ", ""))
    except ValueError as e:
        raise ConfigSchemaError(f"center must be a complex number, got {center!r}") from e
    frame = model_manager.kernel_surface(kernel, center_value, half_range, resolution, diagonal)
    FileProcessor().write_csv(frame, out_csv, {"family": kernel.family, "diagonal": diagonal})


@cli.command()
@click.argument("benchmark", type=click.Choice(BENCHMARKS))
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="Benchmark JSON config.")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Overrides the config's seed.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=None, help="Defaults to the configured output directory.")
@handle_errors
def bench(benchmark: str, config_path: Optional[str], seed: Optional[int], out_dir: Optional[str]):
    """Run synthetic1, synthetic2 or equalization and write CSVs plus summary.json."""
    document = read_document(config_path) if config_path else None
    out_dir = Path(out_dir) if out_dir else cfg.OUTPUT_DIR / benchmark
    summary = BenchManager(out_dir).run(benchmark, document, seed)
    click.echo(json.dumps({"config_hash": summary.config_hash, "seed": summary.seed, **summary.results}))
