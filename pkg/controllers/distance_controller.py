import logging
from typing import Callable, Dict, List, Tuple

import numpy as np

from core.config import settings
from models.request_models import RunConfig
from models.result_models import CommandOutput, DistanceRecord
from services.curves import Curve
from services.embed import co_distance, hilbert_gaussian, killing_distance
from services.gaussmodel import Gaussian
from services.raodist import (
    bounds_report,
    fr_same_cov,
    fr_same_mean,
    fr_univariate,
    jeffreys_upper_bound,
    mahalanobis_spd_upper_bound,
    spc_upper_bound,
)
from services.spdgeom import siegel_gaussian_distance
from utils.error_handler import InputValidationError
from utils.formatters import render_csv, render_json
from utils.validators import InputValidator

logger = logging.getLogger(__name__)

DistanceFn = Callable[[Gaussian, Gaussian, float], float]

DISTANCE_METHODS: Dict[str, DistanceFn] = {
    "co": lambda n1, n2, kappa: co_distance(n1, n2),
    "spc": lambda n1, n2, kappa: spc_upper_bound(n1, n2),
    "jeffreys": lambda n1, n2, kappa: jeffreys_upper_bound(n1, n2),
    "mahalanobis-spd": lambda n1, n2, kappa: mahalanobis_spd_upper_bound(n1, n2),
    "same-cov": lambda n1, n2, kappa: fr_same_cov(n1, n2),
    "same-mean": lambda n1, n2, kappa: fr_same_mean(n1, n2),
    "univariate": lambda n1, n2, kappa: fr_univariate(n1, n2),
    "killing": killing_distance,
    "hilbert": lambda n1, n2, kappa: hilbert_gaussian(n1, n2),
    "siegel": lambda n1, n2, kappa: siegel_gaussian_distance(n1, n2),
}


def _load_pairs(config: RunConfig) -> List[Tuple[Gaussian, Gaussian]]:
    return InputValidator.parse_pairs(InputValidator.load_document(config.input))


def compute_distance(n1: Gaussian, n2: Gaussian, method: str, kappa: float = None) -> DistanceRecord:
    """Evaluate one named distance or bound on a pair."""
    method = InputValidator.validate_method(method)
    kappa = settings.default_kappa if kappa is None else kappa
    value = DISTANCE_METHODS[method](n1, n2, kappa)
    return DistanceRecord(method=method, value=value)


def cmd_dist(config: RunConfig) -> CommandOutput:
    """Distance or bound selected by --method for every pair of the input document."""
    method = InputValidator.validate_method(config.method or "")
    pairs = _load_pairs(config)
    records = [compute_distance(n1, n2, method, config.kappa) for n1, n2 in pairs]
    logger.info(f"Computed {method} on {len(records)} pair(s)")

    if config.output_format() == "csv":
        return CommandOutput(text=render_csv(
            ["pair", "method", "value"],
            [(i, r.method, r.value) for i, r in enumerate(records)],
        ))
    if len(records) == 1:
        return CommandOutput(text=render_json(records[0].model_dump(mode="json")))
    return CommandOutput(text=render_json([{"pair": i, **r.model_dump(mode="json")} for i, r in enumerate(records)]))


def cmd_approx(config: RunConfig) -> CommandOutput:
    """Bounds and curve approximations for every pair of the input document."""
    kinds = InputValidator.validate_curves(config.curves)
    T = settings.default_segments if config.T is None else config.T
    pairs = _load_pairs(config)
    reports = [bounds_report(n1, n2, T, kinds) for n1, n2 in pairs]

    if config.output_format() == "csv":
        rows = []
        for i, report in enumerate(reports):
            rows.append((i, "co_lower", "", "", report.co_lower, "", ""))
            for name, upper in report.upper_bounds().items():
                rows.append((i, f"{name}_upper", "", "", upper, "", ""))
            for curve, result in report.approximations.items():
                rows.append((i, "approx", curve, result.T, result.value, report.kappa[curve], result.defect))
        return CommandOutput(text=render_csv(["pair", "quantity", "curve", "T", "value", "kappa", "defect"], rows))
    payloads = [r.model_dump(mode="json") for r in reports]
    return CommandOutput(text=render_json(payloads[0] if len(payloads) == 1 else payloads))


def cmd_curve(config: RunConfig) -> CommandOutput:
    """Plot-ready samples of one curve at t = i/(samples − 1)."""
    kinds = InputValidator.validate_curves(config.curves) if config.curves else []
    if len(kinds) != 1:
        raise InputValidationError("curve needs exactly one curve in --curves", "curves")
    pairs = _load_pairs(config)
    if len(pairs) != 1:
        raise InputValidationError(f"curve needs exactly one pair, got {len(pairs)}", "pairs")
    n1, n2 = pairs[0]
    ts = np.arange(config.samples) / (config.samples - 1)
    samples = Curve.of(kinds[0], n1, n2).sample(ts)

    d = n1.dim
    upper = [(i, j) for i in range(d) for j in range(i, d)]
    if config.output_format("csv") == "json":
        return CommandOutput(text=render_json([
            {"t": float(t), "mean": m.tolist(), "cov": c.tolist()}
            for t, m, c in zip(samples.ts, samples.means, samples.covs)
        ]))
    header = ["t"] + [f"mu_{i + 1}" for i in range(d)] + [f"sigma_{i + 1}{j + 1}" for i, j in upper]
    rows = [
        [float(t)] + [float(x) for x in m] + [float(c[i, j]) for i, j in upper]
        for t, m, c in zip(samples.ts, samples.means, samples.covs)
    ]
    return CommandOutput(text=render_csv(header, rows))
