import logging
from typing import List, Optional, Tuple

import numpy as np

from core.config import settings
from services.gaussmodel import Gaussian
from utils.error_handler import InputValidationError

logger = logging.getLogger(__name__)


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """
    Create the counter-based generator used everywhere randomness is needed.

    Args:
        seed: 64-bit seed (default: settings.default_seed)

    Returns:
        numpy Generator backed by Philox and seeded through SeedSequence
    """
    seed = settings.default_seed if seed is None else seed
    if seed < 0:
        raise InputValidationError("Seed must be non-negative", "seed")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def trial_rngs(seed: int, trials: int, *stream: int) -> List[np.random.Generator]:
    """
    Independent streams, one per trial, so that trial i draws the same
    numbers whatever worker evaluates it.

    Args:
        seed: Run seed
        trials: Number of streams
        stream: Extra integers keying a separate family of streams (e.g. scenario and dimension)

    Returns:
        List of generators indexed by trial
    """
    if trials <= 0:
        raise InputValidationError("Trials must be positive", "trials")
    if seed < 0:
        raise InputValidationError("Seed must be non-negative", "seed")
    entropy = [seed, *stream] if stream else seed
    children = np.random.SeedSequence(entropy).spawn(trials)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def random_lower_factor(rng: np.random.Generator, d: int) -> np.ndarray:
    """Lower-triangular matrix with iid Unif(0, 1) entries on and below the diagonal."""
    if d <= 0:
        raise InputValidationError("Dimension must be positive", "dims")
    return np.tril(rng.uniform(0.0, 1.0, size=(d, d)))


def random_spd(rng: np.random.Generator, d: int) -> np.ndarray:
    """
    Generate a random SPD matrix Σ = L·Lᵀ.

    Args:
        rng: Generator to draw from
        d: Dimension

    Returns:
        d×d symmetric positive definite array
    """
    lower = random_lower_factor(rng, d)
    return lower @ lower.T


def random_gaussian(rng: np.random.Generator, d: int) -> Gaussian:
    """
    Generate a random normal with μ ~ Unif(0, 1)^d and Σ = L·Lᵀ.

    Args:
        rng: Generator to draw from
        d: Dimension

    Returns:
        Gaussian
    """
    mean = rng.uniform(0.0, 1.0, size=d)
    return Gaussian(mean=mean, cov=random_spd(rng, d))


def random_pair(rng: np.random.Generator, d: int) -> Tuple[Gaussian, Gaussian]:
    return random_gaussian(rng, d), random_gaussian(rng, d)


def separated_pair(rng: np.random.Generator, d: int, spread: float = 5.0) -> Tuple[Gaussian, Gaussian]:
    """
    Standard normal against a diagonal normal drifting away from it.

    N1 = N(0, I); N2 has mean ~ Unif(0, spread)^d and covariance
    diag(u) with u ~ Unif(0, spread)^d.

    Args:
        rng: Generator to draw from
        d: Dimension
        spread: Upper end of the uniform draws (default: 5)

    Returns:
        Tuple (N1, N2)
    """
    if spread <= 0:
        raise InputValidationError("Spread must be positive", "spread")
    n1 = Gaussian(mean=np.zeros(d), cov=np.eye(d))
    mean = rng.uniform(0.0, spread, size=d)
    # Unif(0, a) can return exactly 0
    scales = np.maximum(rng.uniform(0.0, spread, size=d), np.finfo(float).tiny)
    return n1, Gaussian(mean=mean, cov=np.diag(scales))


def random_invertible(rng: np.random.Generator, d: int) -> np.ndarray:
    """
    Generate a well-conditioned random invertible matrix (used for affine
    invariance checks).

    Args:
        rng: Generator to draw from
        d: Dimension

    Returns:
        d×d array with determinant bounded away from zero
    """
    if d <= 0:
        raise InputValidationError("Dimension must be positive", "dims")
    return rng.uniform(-1.0, 1.0, size=(d, d)) + d * np.eye(d)
