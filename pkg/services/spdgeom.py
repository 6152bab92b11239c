#!/usr/bin/env python3
"""
Geometry of the SPD cone and of the Siegel upper half-space.

Distances and geodesics used directly on covariance matrices and, through
the Calvo-Oller embedding, on Gaussians.
"""

import logging
import math
from typing import Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from core.config import settings
from core.matcore import (
    as_spd,
    complex_eigenvalues,
    spd_inv_sqrt,
    spd_sqrt,
    sym_eigen,
    symmetrize,
)
from services.gaussmodel import Gaussian
from utils.error_handler import DimensionMismatch, InvalidCrossRatio, SingularFactor

logger = logging.getLogger(__name__)


class SiegelPoint(BaseModel):
    """Z = X + iY with X symmetric and Y positive definite."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    X: np.ndarray
    Y: np.ndarray

    @field_validator("X", mode="before")
    @classmethod
    def _real_part(cls, v):
        return symmetrize(v)

    @field_validator("Y", mode="before")
    @classmethod
    def _imag_part(cls, v):
        return as_spd(v).matrix

    @property
    def dim(self) -> int:
        return self.Y.shape[0]

    def as_complex(self) -> np.ndarray:
        return self.X + 1j * self.Y


def relative_eigenvalues(p1, p2) -> np.ndarray:
    """Eigenvalues of P1⁻¹P2, obtained from the congruent matrix P1^{-1/2}·P2·P1^{-1/2}."""
    s1, s2 = as_spd(p1), as_spd(p2)
    if s1.dim != s2.dim:
        raise DimensionMismatch(s1.dim, s2.dim)
    w = spd_inv_sqrt(s1)
    return sym_eigen(w @ s2.matrix @ w).eigenvalues


def rho_spd(p1, p2) -> float:
    """ρ_SPD(P1, P2) = √(Σ log² λ_i(P1⁻¹P2))."""
    lam = relative_eigenvalues(p1, p2)
    return float(np.sqrt(np.sum(np.log(lam) ** 2)))


def spd_geodesic_path(p1, p2, ts: Union[float, Sequence[float], np.ndarray]) -> np.ndarray:
    """
    Stack of γ(t) = P1^{1/2} (P1^{-1/2} P2 P1^{-1/2})^t P1^{1/2} for every t in ``ts``.

    Returns:
        Array of shape (len(ts), n, n).
    """
    s1, s2 = as_spd(p1), as_spd(p2)
    if s1.dim != s2.dim:
        raise DimensionMismatch(s1.dim, s2.dim)
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    root = spd_sqrt(s1)
    inv_root = spd_inv_sqrt(s1)
    eig = sym_eigen(inv_root @ s2.matrix @ inv_root)
    lam = np.maximum(eig.eigenvalues, np.finfo(float).tiny)
    q = eig.eigenvectors
    powers = lam[None, :] ** ts[:, None]
    inner = np.einsum("ij,nj,kj->nik", q, powers, q)
    path = root @ inner @ root
    return 0.5 * (path + np.swapaxes(path, -1, -2))


def spd_geodesic(p1, p2, t: float) -> np.ndarray:
    return spd_geodesic_path(p1, p2, [t])[0]


def hilbert_projective(p1, p2) -> float:
    """log(λ_max / λ_min) of P1⁻¹P2."""
    lam = relative_eigenvalues(p1, p2)
    return float(math.log(lam[0] / lam[-1]))


# =====================================================
# SIEGEL UPPER HALF-SPACE
# =====================================================

def _right_divide(a: np.ndarray, b: np.ndarray, what: str) -> np.ndarray:
    """a·b⁻¹, rejecting numerically singular b."""
    if np.linalg.cond(b) > 1.0 / (np.finfo(float).eps * 1e3):
        raise SingularFactor(f"{what} is numerically singular")
    return np.linalg.solve(b.T, a.T).T


def siegel_cross_ratio(z1: SiegelPoint, z2: SiegelPoint) -> np.ndarray:
    """R = (Z1 − Z2)(Z1 − Z̄2)⁻¹(Z̄1 − Z̄2)(Z̄1 − Z2)⁻¹."""
    if z1.dim != z2.dim:
        raise DimensionMismatch(z1.dim, z2.dim)
    a, b = z1.as_complex(), z2.as_complex()
    left = _right_divide(a - b, a - b.conj(), "Z1 - conj(Z2)")
    right = _right_divide(a.conj() - b.conj(), a.conj() - b, "conj(Z1) - Z2")
    return left @ right


def cross_ratio_eigenvalues(z1: SiegelPoint, z2: SiegelPoint) -> np.ndarray:
    """Real eigenvalues r_i ∈ [0, 1) of the matrix cross-ratio, after rounding cleanup."""
    r = siegel_cross_ratio(z1, z2)
    lam = complex_eigenvalues(r.real, r.imag)
    imag_tol = settings.siegel_imag_tolerance
    worst = float(np.max(np.abs(lam.imag))) if lam.size else 0.0
    if worst > imag_tol:
        raise InvalidCrossRatio(f"cross-ratio eigenvalue has imaginary part {worst:.3e}")
    if worst > 0.5 * imag_tol:
        logger.warning(f"Dropping imaginary parts up to {worst:.3e} from cross-ratio eigenvalues")
    real = lam.real
    if np.any(real < -imag_tol) or np.any(real >= 1.0):
        raise InvalidCrossRatio(f"cross-ratio eigenvalues outside [0, 1): {real.tolist()}")
    return np.clip(real, 0.0, 1.0 - settings.siegel_clamp)


def siegel_distance(z1: SiegelPoint, z2: SiegelPoint) -> float:
    """√(Σ log²((1 + √r_i)/(1 − √r_i))), each log evaluated as 2·atanh(√r_i)."""
    r = cross_ratio_eigenvalues(z1, z2)
    terms = 2.0 * np.arctanh(np.sqrt(r))
    return float(np.sqrt(np.sum(terms ** 2)))


def siegel_embed_gaussian(n: Gaussian) -> SiegelPoint:
    """N(μ, Σ) ↦ μμᵀ + iΣ."""
    return SiegelPoint(X=np.outer(n.mean, n.mean), Y=n.cov)


def siegel_gaussian_distance(n1: Gaussian, n2: Gaussian) -> float:
    return siegel_distance(siegel_embed_gaussian(n1), siegel_embed_gaussian(n2))
