#!/usr/bin/env python3
"""
raomvn - Fisher-Rao distances, bounds and minimax centers for multivariate normals
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from controllers.bench_controller import cmd_bench
from controllers.distance_controller import cmd_approx, cmd_curve, cmd_dist
from controllers.minimax_controller import cmd_kcenter, cmd_seb
from core.config import settings
from middleware.error_handler import CommandErrorHandler
from middleware.logging import CommandLoggingMiddleware
from models.request_models import RunConfig
from models.result_models import CommandOutput
from utils.error_handler import InputValidationError, RaoMVNException
from utils.validators import InputValidator

logger = logging.getLogger(__name__)

COMMANDS: Dict[str, Callable[[RunConfig], CommandOutput]] = {
    "dist": cmd_dist,
    "approx": cmd_approx,
    "curve": cmd_curve,
    "seb": cmd_seb,
    "kcenter": cmd_kcenter,
    "bench": cmd_bench,
}


def configure_logging():
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format=settings.log_format,
        stream=sys.stderr,
    )


class CliParser(argparse.ArgumentParser):
    """Reports usage errors through the common error path instead of exiting."""

    def error(self, message):
        raise InputValidationError(message, "argv")


def build_parser() -> CliParser:
    parser = CliParser(prog="raomvn", description=__doc__.strip())
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--format", help="json or csv")
        p.add_argument("--out", help="Write the result to this path instead of stdout")

    dist = subparsers.add_parser("dist", help="Closed-form distance or bound on each pair")
    dist.add_argument("input", help="Pairs document: JSON file path or inline JSON")
    dist.add_argument("--method", required=True, help=" | ".join(InputValidator.METHODS))
    dist.add_argument("--kappa", type=float, help="Killing metric scale (default from settings)")
    add_output(dist)

    approx = subparsers.add_parser("approx", help="Bounds and curve approximations on each pair")
    approx.add_argument("input", help="Pairs document: JSON file path or inline JSON")
    approx.add_argument("--T", type=int, help="Number of curve segments")
    approx.add_argument("--curves", help="Comma-separated curves (lambda,m,e,em,co,univariate-fr)")
    add_output(approx)

    curve = subparsers.add_parser("curve", help="Sample one curve for plotting")
    curve.add_argument("input", help="Pairs document with a single pair")
    curve.add_argument("--curves", required=True, help="The curve to sample")
    curve.add_argument("--samples", type=int, default=101, help="Number of samples, endpoints included")
    add_output(curve)

    seb = subparsers.add_parser("seb", help="Approximate Fisher-Rao circumcenter of a set")
    seb.add_argument("input", help="Set document: JSON file path or inline JSON")
    seb.add_argument("--T", type=int, help="Number of iterations")
    add_output(seb)

    kcenter = subparsers.add_parser("kcenter", help="Greedy k-center clustering of a set")
    kcenter.add_argument("input", help="Set document: JSON file path or inline JSON")
    kcenter.add_argument("--k", type=int, required=True, help="Number of centers")
    kcenter.add_argument("--seed", type=int, help="Seed drawing the first center (default: settings.default_seed)")
    add_output(kcenter)

    bench = subparsers.add_parser("bench", help="Run a benchmark suite")
    bench.add_argument("suite", help="examples | kappa-table | bounds-table | tsweep")
    bench.add_argument("--T", type=int, help="Number of curve segments")
    bench.add_argument("--seed", type=int, help="Run seed")
    bench.add_argument("--trials", type=int, help="Random pairs per dimension")
    bench.add_argument("--dims", help="Comma-separated dimensions")
    add_output(bench)
    return parser


def parse_config(argv: Optional[List[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    options = {k: v for k, v in vars(args).items() if v is not None and k in RunConfig.model_fields}
    try:
        return RunConfig(**options)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise InputValidationError(f"{location}: {first['msg']}", location)


def write_output(output: CommandOutput, out: Optional[str]):
    if output.text:
        if out:
            Path(out).write_text(output.text, encoding="utf-8")
        else:
            sys.stdout.write(output.text)
            sys.stdout.flush()
    if output.summary:
        print(output.summary, file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    handler = CommandErrorHandler()
    try:
        config = parse_config(argv)
    except RaoMVNException as exc:
        return handler.domain_exception_handler("raomvn", exc).exit_code

    def run() -> CommandOutput:
        output = COMMANDS[config.command](config)
        write_output(output, config.out)
        return output

    middleware = CommandLoggingMiddleware()
    result = middleware.dispatch(
        config.command,
        config.model_dump(),
        lambda: handler.guard(config.command, run),
    )
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
