#!/usr/bin/env python3
"""
Fisher-Rao distance between multivariate normals: exact special cases,
lower and upper bounds, and the curve-discretization approximation.
"""

import logging
import math
from typing import Iterable, Optional, Tuple

import numpy as np

from core.config import settings
from core.matcore import householder_align, ldl, spd_inv_sqrt, sym_eigen
from models.result_models import ApproxResult, BoundsReport
from services.curves import GENERAL_CURVES, Curve, CurveKind
from services.embed import SQRT2, co_distance, stable_arccosh
from services.gaussmodel import Gaussian, check_same_dim, jeffreys, jeffreys_chain, mahalanobis
from services.spdgeom import rho_spd
from utils.error_handler import (
    CovarianceMismatch,
    DimensionMismatch,
    InputValidationError,
    MeanMismatch,
    NegativeInput,
)

logger = logging.getLogger(__name__)

EQUALITY_TOLERANCE = 1e-12


def _same(a: np.ndarray, b: np.ndarray) -> bool:
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return bool(np.allclose(a, b, rtol=0.0, atol=EQUALITY_TOLERANCE * scale))


# =====================================================
# EXACT SPECIAL CASES
# =====================================================

def fr_univariate(n1: Gaussian, n2: Gaussian) -> float:
    """
    Fisher-Rao distance between univariate normals, read off the Poincaré
    upper half-plane: √2·log((1 + Δ)/(1 − Δ)) with
    Δ = √(((μ2 − μ1)² + 2(σ2 − σ1)²) / ((μ2 − μ1)² + 2(σ2 + σ1)²)).

    Raises:
        DimensionMismatch: unless both normals are univariate.
    """
    if n1.dim != 1 or n2.dim != 1:
        raise DimensionMismatch(1, (n1.dim, n2.dim), what="univariate dimension")
    m1, m2 = float(n1.mean[0]), float(n2.mean[0])
    s1, s2 = math.sqrt(float(n1.cov[0, 0])), math.sqrt(float(n2.cov[0, 0]))
    dm2 = (m2 - m1) ** 2
    delta = math.sqrt((dm2 + 2.0 * (s2 - s1) ** 2) / (dm2 + 2.0 * (s2 + s1) ** 2))
    # log((1 + Δ)/(1 − Δ)) = 2·atanh(Δ)
    return 2.0 * SQRT2 * math.atanh(delta)


def h_fr(u: float) -> float:
    """√2·arccosh(1 + ¼u²): Fisher-Rao distance as a function of the Mahalanobis distance u."""
    if u < 0:
        raise NegativeInput("Mahalanobis distance", u)
    return SQRT2 * stable_arccosh(1.0 + 0.25 * u * u)


def h_fr_log_form(u: float) -> float:
    """Same quantity as ``h_fr`` through the upper half-plane form, with Δ = u/√(u² + 8)."""
    if u < 0:
        raise NegativeInput("Mahalanobis distance", u)
    return 2.0 * SQRT2 * math.atanh(u / math.sqrt(u * u + 8.0))


def fr_same_cov(n1: Gaussian, n2: Gaussian) -> float:
    """h_fr(Δ_Σ(μ1, μ2)) for two normals sharing Σ."""
    check_same_dim(n1, n2)
    if not _same(n1.cov, n2.cov):
        raise CovarianceMismatch()
    return h_fr(mahalanobis(n1.mean, n2.mean, n1.cov))


def fr_same_cov_appendix(n1: Gaussian, n2: Gaussian) -> float:
    """
    Same-covariance distance by explicit reduction to a univariate problem.

    1. Translate N1 to the origin and rotate with P so that the mean
       difference lies along e₁.
    2. Factor the rotated precision PΣ⁻¹Pᵀ = L·D·Lᵀ; the map x ↦ Lᵀx keeps
       e₁ fixed and turns the common covariance into D⁻¹.
    3. With a diagonal covariance only the first axis separates the means,
       so the distance is the univariate one between N(0, σ²) and
       N(‖Δμ‖, σ²), σ² = 1/D₁₁.
    """
    check_same_dim(n1, n2)
    if not _same(n1.cov, n2.cov):
        raise CovarianceMismatch()
    delta = n2.mean - n1.mean
    norm = float(np.linalg.norm(delta))
    if norm == 0.0:
        return 0.0
    p = householder_align(delta)
    _, d = ldl(p @ n1.precision() @ p.T)
    variance = 1.0 / float(d[0, 0])
    return fr_univariate(
        Gaussian(mean=[0.0], cov=[[variance]]),
        Gaussian(mean=[norm], cov=[[variance]]),
    )


def rho_covariance(sigma1, sigma2) -> float:
    """Fisher-Rao distance on the fixed-mean submanifold, ρ_SPD(Σ1, Σ2)/√2."""
    return rho_spd(sigma1, sigma2) / SQRT2


def fr_same_mean(n1: Gaussian, n2: Gaussian) -> float:
    """√(½ Σ log² λ_i(Σ1⁻¹Σ2)) for two normals sharing μ."""
    check_same_dim(n1, n2)
    if not _same(n1.mean, n2.mean):
        raise MeanMismatch()
    return rho_covariance(n1.cov, n2.cov)


# =====================================================
# UPPER BOUNDS
# =====================================================

def spc_upper_bound(n1: Gaussian, n2: Gaussian) -> float:
    """
    Upper bound obtained by a diagonal reduction: whiten with Σ1^{-1/2},
    diagonalize the whitened Σ2 = ΩDΩᵀ, and sum independent univariate
    terms for each axis with rotated mean difference μ = ΩᵀΣ1^{-1/2}Δμ.
    """
    check_same_dim(n1, n2)
    w = spd_inv_sqrt(n1.spd)
    eig = sym_eigen(w @ n2.cov @ w)
    d = eig.eigenvalues
    mu = eig.eigenvectors.T @ (w @ (n2.mean - n1.mean))
    a = np.sqrt((1.0 + d) ** 2 + mu ** 2)
    b = np.sqrt((1.0 - d) ** 2 + mu ** 2)
    # (a + b)/(a − b) = (a + b)²/(4D) since a² − b² = 4D
    logs = 2.0 * np.log(a + b) - np.log(4.0 * d)
    return float(math.sqrt(2.0 * float(np.sum(logs ** 2))))


def jeffreys_upper_bound(n1: Gaussian, n2: Gaussian) -> float:
    return math.sqrt(jeffreys(n1, n2))


def mahalanobis_spd_upper_bound(n1: Gaussian, n2: Gaussian) -> float:
    """ρ_P(Σ1, Σ2) + min(Δ_Σ1(μ1, μ2), Δ_Σ2(μ1, μ2)), through the two intermediate normals."""
    check_same_dim(n1, n2)
    shift = min(
        mahalanobis(n1.mean, n2.mean, n1.cov),
        mahalanobis(n1.mean, n2.mean, n2.cov),
    )
    return rho_covariance(n1.cov, n2.cov) + shift


# =====================================================
# CURVE APPROXIMATION
# =====================================================

def _check_segments(T: int) -> None:
    if isinstance(T, bool) or not isinstance(T, (int, np.integer)) or T < 1:
        raise InputValidationError(f"T must be a positive integer, got {T!r}", "T")


def approx_length(curve: Curve, T: int = None) -> ApproxResult:
    """
    Σ_{i=0}^{T−2} √D_J[c(i/T), c((i+1)/T)] along a curve, summed in index
    order. The segment ending at c(1) is left out, so T = 1 gives 0.

    Args:
        curve: Path between the two normals
        T: Number of segments (defaults to settings.default_segments)

    Returns:
        ApproxResult carrying the omitted final segment, with the average and
        maximum projection distance filled in for the projected Calvo-Oller
        curve
    """
    T = settings.default_segments if T is None else T
    _check_segments(T)
    samples = curve.grid(T)
    segments = np.sqrt(jeffreys_chain(samples.means, samples.covs))
    value = math.fsum(segments[: T - 1].tolist())
    defect = defect_max = None
    if samples.defects is not None:
        defect = math.fsum(samples.defects[1:].tolist()) / T
        defect_max = float(np.max(samples.defects))
    logger.debug(f"approx_length {curve.kind.value} T={T}: {value:.6f}")
    return ApproxResult(
        value=value,
        curve_kind=curve.kind.value,
        T=T,
        omitted_segment=float(segments[-1]),
        defect=defect,
        defect_max=defect_max,
    )


def co_curve_defect_stats(n1: Gaussian, n2: Gaussian, T: int = None) -> Tuple[float, float]:
    """
    Average (1/T)·Σ_{i=1}^{T} ρ_P(S_{i/T}, S̄_{i/T}) and maximum distance
    between the SPD geodesic and its projection onto the embedded normals.
    """
    T = settings.default_segments if T is None else T
    _check_segments(T)
    samples = Curve(kind=CurveKind.PROJECTED_CO, n1=n1, n2=n2).grid(T)
    defects = samples.defects
    return math.fsum(defects[1:].tolist()) / T, float(np.max(defects))


def co_curve_defect(n1: Gaussian, n2: Gaussian, T: int = None) -> float:
    return co_curve_defect_stats(n1, n2, T)[0]


def sandwich_upper(n1: Gaussian, n2: Gaussian, T: int = None) -> float:
    """
    ρ_CO + 2δ: each projected point sits within δ of the SPD geodesic on
    average, so the projected curve length is certified against this value.
    """
    return co_distance(n1, n2) + 2.0 * co_curve_defect(n1, n2, T)


def bounds_report(
    n1: Gaussian,
    n2: Gaussian,
    T: int = None,
    curve_kinds: Optional[Iterable] = None,
) -> BoundsReport:
    """Lower bound, the three upper bounds and one approximation per requested curve."""
    check_same_dim(n1, n2)
    T = settings.default_segments if T is None else T
    _check_segments(T)
    kinds = [k if isinstance(k, CurveKind) else CurveKind.parse(k) for k in (curve_kinds or GENERAL_CURVES)]

    co_lower = co_distance(n1, n2)
    approximations = {}
    kappa = {}
    for kind in kinds:
        result = approx_length(Curve(kind=kind, n1=n1, n2=n2), T)
        approximations[kind.value] = result
        kappa[kind.value] = result.value / co_lower if co_lower > EQUALITY_TOLERANCE else None

    best_curve = best_value = None
    if approximations:
        best_curve = min(approximations, key=lambda k: approximations[k].value)
        best_value = approximations[best_curve].value

    report = BoundsReport(
        co_lower=co_lower,
        spc_upper=spc_upper_bound(n1, n2),
        jeffreys_upper=jeffreys_upper_bound(n1, n2),
        mahalanobis_spd_upper=mahalanobis_spd_upper_bound(n1, n2),
        approximations=approximations,
        kappa=kappa,
        best_curve=best_curve,
        best_value=best_value,
    )
    for name, upper in report.upper_bounds().items():
        if co_lower > upper + 1e-9:
            logger.warning(f"Lower bound {co_lower:.6g} exceeds {name} upper bound {upper:.6g}")
    return report
