#!/usr/bin/env python3
"""
Minimax centers: the smallest enclosing Riemannian ball on the SPD cone,
its use as an approximate Fisher-Rao circumcenter of normals, and greedy
k-center clustering under ρ_CO.
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from core.config import settings
from core.matcore import as_spd, spd_inv_sqrt
from models.result_models import BallResult, KCenterResult
from services.embed import co_distance, co_embed, co_inverse, co_project
from services.gaussmodel import Gaussian, check_same_dim
from services.generate_random import make_rng
from services.spdgeom import spd_geodesic
from utils.error_handler import DimensionMismatch, EmptyInput, InputValidationError, KTooLarge

logger = logging.getLogger(__name__)


def spd_distances(center, points: np.ndarray) -> np.ndarray:
    """ρ_SPD from one SPD matrix to a stack of SPD matrices of shape (n, d, d)."""
    w = spd_inv_sqrt(center)
    lam = np.linalg.eigvalsh(w @ points @ w)
    return np.sqrt(np.sum(np.log(lam) ** 2, axis=-1))


def rieseb_spd(points: Sequence, T: int = None) -> np.ndarray:
    """
    Approximate the center of the smallest enclosing ball of SPD matrices.

    Starts at the first point and moves, at step t, a fraction 1/(t + 1) of
    the way along the geodesic towards the current farthest point. Ties go
    to the lowest index. There is no convergence test.

    Args:
        points: Nonempty sequence of SPD matrices of equal dimension
        T: Number of iterates, C₁ through C_T (default: settings.seb_iterations)

    Returns:
        C_T as a d×d array
    """
    T = settings.seb_iterations if T is None else T
    if T < 1:
        raise InputValidationError(f"T must be a positive integer, got {T!r}", "T")
    if len(points) == 0:
        raise EmptyInput("SPD point set")
    spds = [as_spd(p) for p in points]
    dim = spds[0].dim
    for s in spds[1:]:
        if s.dim != dim:
            raise DimensionMismatch(dim, s.dim)
    stack = np.stack([s.matrix for s in spds])

    center = stack[0]
    for t in range(1, T):
        farthest = int(np.argmax(spd_distances(center, stack)))
        center = spd_geodesic(center, stack[farthest], 1.0 / (t + 1))
    logger.debug(f"rieseb_spd: {len(spds)} points, {T} iterates, radius {float(np.max(spd_distances(center, stack))):.6g}")
    return center


def _check_set(gaussians: Sequence[Gaussian]) -> None:
    if len(gaussians) == 0:
        raise EmptyInput("Gaussian set")
    for n in gaussians[1:]:
        check_same_dim(gaussians[0], n)


def fr_circumcenter(gaussians: Sequence[Gaussian], T: int = None) -> BallResult:
    """
    Approximate Fisher-Rao circumcenter of normals.

    The set is embedded with the Calvo-Oller map, the enclosing-ball center is
    computed on the full SPD cone of dimension d + 1 and then projected back
    onto the embedded normals. ``projection_gap`` measures how far the
    unconstrained center was from the normal submanifold.
    """
    _check_set(gaussians)
    T = settings.seb_iterations if T is None else T
    center_spd = rieseb_spd([co_embed(n).matrix for n in gaussians], T)
    projected, gap = co_project(center_spd)
    center = co_inverse(projected)
    radius = max(co_distance(center, n) for n in gaussians)
    return BallResult(
        center=center,
        center_spd=center_spd,
        radius=radius,
        projection_gap=gap,
        iterations=T,
    )


def k_center(gaussians: Sequence[Gaussian], k: int, seed: Optional[int] = None) -> KCenterResult:
    """
    Greedy farthest-first k-center clustering under ρ_CO.

    Args:
        gaussians: Nonempty set of normals
        k: Number of centers, 1 ≤ k ≤ n
        seed: When given, the first center is drawn uniformly from the set;
            otherwise it is the first point

    Returns:
        KCenterResult with the chosen centers, the nearest-center assignment
        of every point and the clustering radius
    """
    _check_set(gaussians)
    n = len(gaussians)
    if k < 1:
        raise InputValidationError(f"k must be a positive integer, got {k!r}", "k")
    if k > n:
        raise KTooLarge(k, n)

    first = 0 if seed is None else int(make_rng(seed).integers(n))
    centers: List[int] = [first]
    distances = np.array([[co_distance(gaussians[first], g) for g in gaussians]])
    while len(centers) < k:
        nearest = np.min(distances, axis=0)
        nearest[centers] = -math.inf
        chosen = int(np.argmax(nearest))
        centers.append(chosen)
        row = np.array([co_distance(gaussians[chosen], g) for g in gaussians])
        distances = np.vstack([distances, row])

    assignment = np.argmin(distances, axis=0)
    # a center is always assigned to itself
    assignment[centers] = np.arange(len(centers))
    assigned = distances[assignment, np.arange(n)]
    return KCenterResult(
        center_indices=centers,
        centers=[gaussians[i] for i in centers],
        assignment=assignment.tolist(),
        radius=float(np.max(assigned)),
    )
