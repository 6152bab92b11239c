import logging
from functools import lru_cache
from pathlib import Path
from typing import Optional, Tuple

from pydantic import ValidationError

from core.config import settings
from models.golden_models import GoldenRegistry
from services.gaussmodel import Gaussian
from utils.error_handler import InputValidationError

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent


def resolve_goldens_path(path: Optional[str] = None) -> Path:
    """Relative registry paths are taken from the project root."""
    candidate = Path(path or settings.goldens_path)
    if not candidate.is_absolute():
        candidate = PROJECT_ROOT / candidate
    return candidate


@lru_cache(maxsize=4)
def load_goldens(path: Optional[str] = None) -> GoldenRegistry:
    """Load the golden reference values registry"""
    registry_file = resolve_goldens_path(path)
    if not registry_file.exists():
        logger.error(f"Golden registry not found at {registry_file}")
        raise InputValidationError(f"golden registry not found: {registry_file}", "goldens_path")
    try:
        registry = GoldenRegistry.model_validate_json(registry_file.read_text(encoding="utf-8"))
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise InputValidationError(f"invalid golden registry ({location}): {first['msg']}", "goldens_path")
    logger.info(f"Loaded {len(registry.checks)} golden checks from {registry_file}")
    return registry


def golden_pair(name: str, path: Optional[str] = None) -> Tuple[Gaussian, Gaussian]:
    """Named reference pair from the registry"""
    registry = load_goldens(path)
    if name not in registry.pairs:
        raise InputValidationError(f"unknown reference pair '{name}'", "pair")
    pair = registry.pairs[name]
    return pair.n1.to_gaussian(), pair.n2.to_gaussian()
