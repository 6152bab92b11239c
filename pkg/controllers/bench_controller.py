import logging

from core.config import settings
from models.request_models import RunConfig
from models.result_models import BenchSummary, CommandOutput
from services.bench_service import bench_service
from utils.error_handler import EXIT_BENCH_FAILURE, EXIT_OK
from utils.formatters import render_csv, render_json
from utils.validators import InputValidator

logger = logging.getLogger(__name__)


def run_suite(config: RunConfig) -> BenchSummary:
    suite = InputValidator.validate_suite(config.suite or "")
    if suite == "examples":
        return bench_service.run_examples()
    if suite == "tsweep":
        return bench_service.run_tsweep()
    T = settings.default_segments if config.T is None else config.T
    dims = config.dimensions()
    if suite == "kappa-table":
        return bench_service.run_kappa_table(dims, config.trials, T, config.run_seed)
    return bench_service.run_bounds_table(dims, config.trials, T, config.run_seed)


def cmd_bench(config: RunConfig) -> CommandOutput:
    """Run a bench suite; exit 1 when any check fails."""
    summary = run_suite(config)
    if config.output_format("csv") == "json":
        text = render_json(summary.model_dump(mode="json"))
    else:
        text = render_csv(
            ["suite", "name", "value", "expected", "tolerance", "status"],
            [(r.suite, r.name, r.value, r.expected, r.tolerance, r.status) for r in summary.rows],
        )
    line = (
        f"{summary.suite}: {summary.passed} passed, {summary.failed} failed, "
        f"{summary.known_discrepancies} known discrepancies"
    )
    return CommandOutput(text=text, summary=line, exit_code=EXIT_OK if summary.ok else EXIT_BENCH_FAILURE)
