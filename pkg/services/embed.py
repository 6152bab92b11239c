#!/usr/bin/env python3
"""
Calvo-Oller and SSPD embeddings of Gaussians into the SPD cone of
dimension d + 1, the orthogonal projection back onto the embedded normals,
and the Killing distance.
"""

import logging
import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from core.matcore import SpdMatrix, as_spd, cholesky, sym_eigen
from services.gaussmodel import Gaussian, check_same_dim
from services.spdgeom import hilbert_projective, relative_eigenvalues
from utils.error_handler import (
    MeanMismatch,
    NegativeInput,
    NotPositiveDefinite,
    ProjectionOutsideModel,
)

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


class EmbeddedGaussian(BaseModel):
    """P̄ = f_β(μ, Σ) together with its bottom-right entry β."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: SpdMatrix
    beta: float

    @property
    def dim(self) -> int:
        return self.matrix.dim


def embed_arrays(mean: np.ndarray, cov: np.ndarray, beta: float = 1.0) -> np.ndarray:
    """[[Σ + βμμᵀ, βμ], [βμᵀ, β]], vectorized over leading axes."""
    mean = np.asarray(mean, dtype=float)
    cov = np.asarray(cov, dtype=float)
    d = mean.shape[-1]
    out = np.zeros(mean.shape[:-1] + (d + 1, d + 1))
    out[..., :d, :d] = cov + beta * mean[..., :, None] * mean[..., None, :]
    out[..., :d, d] = beta * mean
    out[..., d, :d] = beta * mean
    out[..., d, d] = beta
    return out


def project_arrays(p: np.ndarray):
    """
    Split stacked (d+1)×(d+1) matrices into (β, μ, Σ) with μ = P[:d, d]/β and
    Σ = A − βμμᵀ; Σ is not checked here.
    """
    d = p.shape[-1] - 1
    beta = p[..., d, d]
    mean = p[..., :d, d] / beta[..., None]
    cov = p[..., :d, :d] - beta[..., None, None] * mean[..., :, None] * mean[..., None, :]
    cov = 0.5 * (cov + np.swapaxes(cov, -1, -2))
    return beta, mean, cov


def co_embed(n: Gaussian, beta: float = 1.0) -> EmbeddedGaussian:
    if beta <= 0:
        raise NegativeInput("beta", beta)
    return EmbeddedGaussian(matrix=as_spd(embed_arrays(n.mean, n.cov, beta)), beta=float(beta))


def co_inverse(p: EmbeddedGaussian) -> Gaussian:
    beta, mean, cov = project_arrays(p.matrix.matrix)
    return Gaussian(mean=mean, cov=cov)


def co_project(p) -> Tuple[EmbeddedGaussian, float]:
    """
    Orthogonal projection of P ∈ 𝒫(d+1) onto the β = 1 embedded normals.

    Returns:
        (projected matrix with β = 1, defect |log β|/√2)

    Raises:
        ProjectionOutsideModel: when the recovered Σ is not positive definite.
    """
    matrix = p.matrix.matrix if isinstance(p, EmbeddedGaussian) else as_spd(p).matrix
    beta, mean, cov = project_arrays(matrix)
    if beta <= 0:
        raise ProjectionOutsideModel(f"bottom-right entry beta={beta} is not positive")
    try:
        n = Gaussian(mean=mean, cov=cov)
    except NotPositiveDefinite as e:
        raise ProjectionOutsideModel() from e
    return co_embed(n), abs(math.log(beta)) / SQRT2


def co_distance(n1: Gaussian, n2: Gaussian) -> float:
    """ρ_CO = √(½ Σ_{i=1}^{d+1} log² λ_i(P̄1⁻¹P̄2)), a lower bound on Fisher-Rao."""
    check_same_dim(n1, n2)
    lam = relative_eigenvalues(co_embed(n1).matrix, co_embed(n2).matrix)
    return float(np.sqrt(0.5 * np.sum(np.log(lam) ** 2)))


def co_same_cov(delta: float) -> float:
    """h_CO(Δ) = arccosh(1 + ½Δ²)."""
    if delta < 0:
        raise NegativeInput("Mahalanobis distance", delta)
    return stable_arccosh(1.0 + 0.5 * delta * delta)


def stable_arccosh(x: float) -> float:
    """log(x + √((x − 1)(x + 1))), accurate near x = 1."""
    return math.log(x + math.sqrt((x - 1.0) * (x + 1.0)))


def co_ds2(n: Gaussian, d_mu, d_sigma, beta: float = 1.0, d_beta: float = 0.0) -> float:
    """
    Line element of the foliated embedding,
    ½(dβ/β)² + β·dμᵀΣ⁻¹dμ + ½tr((Σ⁻¹dΣ)²).
    """
    d_mu = np.asarray(d_mu, dtype=float).reshape(-1)
    a = n.solve(np.asarray(d_sigma, dtype=float))
    return 0.5 * (d_beta / beta) ** 2 + beta * float(d_mu @ n.solve(d_mu)) + 0.5 * float(np.trace(a @ a))


def hilbert_gaussian(n1: Gaussian, n2: Gaussian) -> float:
    """Hilbert projective distance between Calvo-Oller embeddings."""
    check_same_dim(n1, n2)
    return hilbert_projective(co_embed(n1).matrix, co_embed(n2).matrix)


# =====================================================
# SSPD EMBEDDING AND KILLING DISTANCE
# =====================================================

def sspd_embed(n: Gaussian) -> SpdMatrix:
    """|Σ|^{−1/(d+1)}·f(μ, Σ), a unit-determinant SPD matrix."""
    scale = math.exp(-n.logdet() / (n.dim + 1))
    return as_spd(scale * embed_arrays(n.mean, n.cov))


def killing_distance(n1: Gaussian, n2: Gaussian, kappa: float) -> float:
    """√(κ Σ log² λ_i(L̂1⁻¹ P̂2 L̂1⁻ᵀ)) with L̂1 the Cholesky factor of P̂1."""
    if kappa <= 0:
        raise NegativeInput("kappa", kappa)
    check_same_dim(n1, n2)
    lower = cholesky(sspd_embed(n1))
    p2 = sspd_embed(n2).matrix
    inv_lower = np.linalg.inv(lower)
    lam = sym_eigen(inv_lower @ p2 @ inv_lower.T).eigenvalues
    if np.any(lam <= 0):
        raise NotPositiveDefinite("whitened SSPD matrix lost positive definiteness")
    return float(math.sqrt(kappa * float(np.sum(np.log(lam) ** 2))))


def killing_same_mean(n1: Gaussian, n2: Gaussian, kappa: float) -> float:
    """
    Killing distance on a same-mean pair,
    √(κ(Σ log² λ_i − (Σ log λ_i)²/(d + 1))) with λ_i the eigenvalues of Σ1⁻¹Σ2.
    """
    if kappa <= 0:
        raise NegativeInput("kappa", kappa)
    check_same_dim(n1, n2)
    if not np.allclose(n1.mean, n2.mean, rtol=0, atol=1e-12):
        raise MeanMismatch()
    logs = np.log(relative_eigenvalues(n1.cov, n2.cov))
    value = float(np.sum(logs ** 2)) - float(np.sum(logs)) ** 2 / (n1.dim + 1)
    return float(math.sqrt(kappa * max(value, 0.0)))


def killing_same_cov(delta: float, kappa: float) -> float:
    """√(2κ)·arccosh(1 + ½Δ²)."""
    return math.sqrt(2.0 * kappa) * co_same_cov(delta)
