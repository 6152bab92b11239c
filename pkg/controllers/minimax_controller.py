import logging

from core.config import settings
from models.request_models import RunConfig
from models.result_models import CommandOutput
from services.minimax import fr_circumcenter, k_center
from utils.formatters import render_csv, render_json
from utils.validators import InputValidator

logger = logging.getLogger(__name__)


def cmd_seb(config: RunConfig) -> CommandOutput:
    """Approximate circumcenter of the input set; seed-free."""
    gaussians = InputValidator.parse_set(InputValidator.load_document(config.input))
    T = settings.seb_iterations if config.T is None else config.T
    ball = fr_circumcenter(gaussians, T)
    logger.info(f"Circumcenter of {len(gaussians)} Gaussians: radius {ball.radius:.6g}, gap {ball.projection_gap:.3g}")

    if config.output_format() == "csv":
        center = ball.center
        return CommandOutput(text=render_csv(
            ["radius", "projection_gap", "iterations", "mean", "cov"],
            [(ball.radius, ball.projection_gap, ball.iterations, center.mean.tolist(), center.cov.tolist())],
        ))
    return CommandOutput(text=render_json(ball.to_payload()))


def cmd_kcenter(config: RunConfig) -> CommandOutput:
    """Greedy k-center clustering; the run seed draws the first center, so an omitted --seed acts as settings.default_seed."""
    k = InputValidator.validate_k(config.k)
    gaussians = InputValidator.parse_set(InputValidator.load_document(config.input))
    result = k_center(gaussians, k, config.run_seed)
    logger.info(f"k-center with k={k} on {len(gaussians)} Gaussians: radius {result.radius:.6g}")

    if config.output_format() == "csv":
        return CommandOutput(text=render_csv(
            ["point", "center"],
            [(i, result.center_indices[a]) for i, a in enumerate(result.assignment)],
        ))
    return CommandOutput(text=render_json(result.to_payload()))
