#!/usr/bin/env python3
"""
Closed-form curves joining two Gaussians.

All curves are oriented so that t = 0 gives the first endpoint and t = 1 the
second. Sampling is vectorized over t: ``Curve.sample`` returns stacked
means (n, d) and covariances (n, d, d).
"""

import logging
import math
from enum import Enum
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from services.embed import SQRT2, embed_arrays, project_arrays
from services.gaussmodel import Gaussian, TangentDisplacement, check_same_dim
from services.spdgeom import spd_geodesic_path
from utils.error_handler import (
    CurveEvaluationError,
    DimensionMismatch,
    InputValidationError,
    ProjectionOutsideModel,
)

logger = logging.getLogger(__name__)


class CurveKind(str, Enum):
    LINEAR_LAMBDA = "lambda"
    MIXTURE = "m"
    EXPONENTIAL = "e"
    EM_MID = "em"
    PROJECTED_CO = "co"
    UNIVARIATE_FR = "univariate-fr"

    @classmethod
    def parse(cls, name: str) -> "CurveKind":
        key = name.strip().lower()
        aliases = {
            "linear": cls.LINEAR_LAMBDA,
            "mixture": cls.MIXTURE,
            "exponential": cls.EXPONENTIAL,
            "em-mid": cls.EM_MID,
            "projected-co": cls.PROJECTED_CO,
            "fr": cls.UNIVARIATE_FR,
        }
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise InputValidationError(f"unknown curve '{name}' (expected one of: {valid})", "curves")


GENERAL_CURVES = (
    CurveKind.LINEAR_LAMBDA,
    CurveKind.MIXTURE,
    CurveKind.EXPONENTIAL,
    CurveKind.EM_MID,
    CurveKind.PROJECTED_CO,
)


class CurveSamples(BaseModel):
    """Curve evaluated on a grid; ``defects`` holds ρ_𝒫(S_t, S̄_t) for the projected C&O curve."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    ts: np.ndarray
    means: np.ndarray
    covs: np.ndarray
    defects: Optional[np.ndarray] = None

    def gaussian(self, i: int) -> Gaussian:
        return Gaussian(mean=self.means[i], cov=self.covs[i])


Arrays = Tuple[np.ndarray, np.ndarray]


def _linear_lambda(n1: Gaussian, n2: Gaussian, ts: np.ndarray) -> Arrays:
    w = ts[:, None]
    means = (1 - w) * n1.mean + w * n2.mean
    covs = (1 - w[..., None]) * n1.cov + w[..., None] * n2.cov
    return means, covs


def _mixture(n1: Gaussian, n2: Gaussian, ts: np.ndarray) -> Arrays:
    w = ts[:, None]
    w3 = w[..., None]
    means = (1 - w) * n1.mean + w * n2.mean
    second1 = n1.cov + np.outer(n1.mean, n1.mean)
    second2 = n2.cov + np.outer(n2.mean, n2.mean)
    covs = (1 - w3) * second1 + w3 * second2 - means[:, :, None] * means[:, None, :]
    return means, covs


def _exponential(n1: Gaussian, n2: Gaussian, ts: np.ndarray) -> Arrays:
    w = ts[:, None]
    w3 = w[..., None]
    p1, p2 = n1.precision(), n2.precision()
    precisions = (1 - w3) * p1 + w3 * p2
    covs = np.linalg.inv(precisions)
    h = (1 - w) * (p1 @ n1.mean) + w * (p2 @ n2.mean)
    means = np.einsum("nij,nj->ni", covs, h)
    return means, covs


def _em_mid(n1: Gaussian, n2: Gaussian, ts: np.ndarray) -> Arrays:
    mm, mc = _mixture(n1, n2, ts)
    em, ec = _exponential(n1, n2, ts)
    return 0.5 * (mm + em), 0.5 * (mc + ec)


def projected_co_arrays(n1: Gaussian, n2: Gaussian, ts: np.ndarray):
    """f⁻¹(proj(γ_𝒫(P̄1, P̄2; t))) with the SPD geodesic matrices and projection defects."""
    path = spd_geodesic_path(embed_arrays(n1.mean, n1.cov), embed_arrays(n2.mean, n2.cov), ts)
    beta, means, covs = project_arrays(path)
    bad = np.flatnonzero(beta <= 0)
    if bad.size:
        raise ProjectionOutsideModel(
            f"curve co at t={ts[bad[0]]:.6g}: bottom-right entry beta={beta[bad[0]]:.3e} is not positive"
        )
    return means, covs, np.abs(np.log(beta)) / SQRT2, path


def _projected_co(n1: Gaussian, n2: Gaussian, ts: np.ndarray) -> Arrays:
    means, covs, _, _ = projected_co_arrays(n1, n2, ts)
    return means, covs


def univariate_fr_arrays(m1: float, s1: float, m2: float, s2: float, ts: np.ndarray):
    """
    (μ(t), σ(t)) along the Fisher-Rao geodesic of univariate normals.

    With x = μ/√2 the geodesic is a half circle centered on the x-axis
    (or a vertical segment when μ1 = μ2); angles are interpolated linearly.

    Returns:
        Tuple (mu, sigma, theta) of arrays shaped like ``ts``; theta is None
        on the vertical-segment branch.
    """
    if math.isclose(m1, m2, rel_tol=0.0, abs_tol=1e-15):
        return np.full_like(ts, m1), (1 - ts) * s1 + ts * s2, None
    c = (0.5 * (m2 * m2 - m1 * m1) + s2 * s2 - s1 * s1) / (SQRT2 * (m2 - m1))
    r = math.hypot(m1 / SQRT2 - c, s1)
    # atan2 lands in (0, π): arctan plus π for negative angles
    theta1 = math.atan2(s1, m1 / SQRT2 - c)
    theta2 = math.atan2(s2, m2 / SQRT2 - c)
    theta = (1 - ts) * theta1 + ts * theta2
    mu = SQRT2 * (c + r * np.cos(theta))
    sigma = r * np.sin(theta)
    mu[ts == 0.0] = m1
    sigma[ts == 0.0] = s1
    mu[ts == 1.0] = m2
    sigma[ts == 1.0] = s2
    return mu, sigma, theta


def univariate_fr_circle(n1: Gaussian, n2: Gaussian) -> Dict[str, float]:
    """Center c and the radii computed from each endpoint, for consistency checks."""
    m1, s1, m2, s2 = _univariate_params(n1, n2)
    c = (0.5 * (m2 * m2 - m1 * m1) + s2 * s2 - s1 * s1) / (SQRT2 * (m2 - m1))
    return {"c": c, "r1": math.hypot(m1 / SQRT2 - c, s1), "r2": math.hypot(m2 / SQRT2 - c, s2)}


def _univariate_params(n1: Gaussian, n2: Gaussian):
    if n1.dim != 1 or n2.dim != 1:
        raise DimensionMismatch(1, (n1.dim, n2.dim))
    return float(n1.mean[0]), math.sqrt(n1.cov[0, 0]), float(n2.mean[0]), math.sqrt(n2.cov[0, 0])


def _univariate_fr(n1: Gaussian, n2: Gaussian, ts: np.ndarray) -> Arrays:
    m1, s1, m2, s2 = _univariate_params(n1, n2)
    mu, sigma, _ = univariate_fr_arrays(m1, s1, m2, s2, ts)
    return mu[:, None], (sigma ** 2)[:, None, None]


def univariate_fr_geodesic(n1: Gaussian, n2: Gaussian, t: float) -> Gaussian:
    means, covs = _univariate_fr(n1, n2, np.array([float(t)]))
    return Gaussian(mean=means[0], cov=covs[0])


_SAMPLERS: Dict[CurveKind, Callable[[Gaussian, Gaussian, np.ndarray], Arrays]] = {
    CurveKind.LINEAR_LAMBDA: _linear_lambda,
    CurveKind.MIXTURE: _mixture,
    CurveKind.EXPONENTIAL: _exponential,
    CurveKind.EM_MID: _em_mid,
    CurveKind.PROJECTED_CO: _projected_co,
    CurveKind.UNIVARIATE_FR: _univariate_fr,
}


class Curve(BaseModel):
    """A closed-form path t ∈ [0, 1] ↦ Gaussian between two endpoints."""
    model_config = ConfigDict(frozen=True)

    kind: CurveKind
    n1: Gaussian
    n2: Gaussian

    @model_validator(mode="after")
    def _check_endpoints(self):
        check_same_dim(self.n1, self.n2)
        if self.kind == CurveKind.UNIVARIATE_FR and self.n1.dim != 1:
            raise DimensionMismatch(1, self.n1.dim, what="univariate-fr dimension")
        return self

    @classmethod
    def of(cls, kind: Union[CurveKind, str], n1: Gaussian, n2: Gaussian) -> "Curve":
        if not isinstance(kind, CurveKind):
            kind = CurveKind.parse(kind)
        return cls(kind=kind, n1=n1, n2=n2)

    def sample(self, ts: Union[Sequence[float], np.ndarray]) -> CurveSamples:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        defects = None
        if self.kind == CurveKind.PROJECTED_CO:
            means, covs, defects, _ = projected_co_arrays(self.n1, self.n2, ts)
        else:
            means, covs = _SAMPLERS[self.kind](self.n1, self.n2, ts)
        covs = 0.5 * (covs + np.swapaxes(covs, -1, -2))
        self._check_samples(ts, covs)
        return CurveSamples(ts=ts, means=means, covs=covs, defects=defects)

    def grid(self, segments: int) -> CurveSamples:
        return self.sample(np.arange(segments + 1) / segments)

    def evaluate(self, t: float) -> Gaussian:
        return self.sample([t]).gaussian(0)

    def tangent(self, t: float) -> TangentDisplacement:
        """Velocity (dμ/dt, dΣ/dt) for the λ, mixture, exponential and em-mid curves."""
        d_mu, d_sigma = self.tangents(np.array([float(t)]))
        return TangentDisplacement(d_mu=d_mu[0], d_sigma=d_sigma[0])

    def tangents(self, ts: np.ndarray) -> Arrays:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        n1, n2 = self.n1, self.n2
        d_mean = n2.mean - n1.mean
        if self.kind == CurveKind.LINEAR_LAMBDA:
            return np.tile(d_mean, (ts.size, 1)), np.tile(n2.cov - n1.cov, (ts.size, 1, 1))
        if self.kind == CurveKind.MIXTURE:
            means, _ = _mixture(n1, n2, ts)
            base = n2.cov - n1.cov + np.outer(n2.mean, n2.mean) - np.outer(n1.mean, n1.mean)
            cross = d_mean[None, :, None] * means[:, None, :]
            return np.tile(d_mean, (ts.size, 1)), base - cross - np.swapaxes(cross, -1, -2)
        if self.kind == CurveKind.EXPONENTIAL:
            p1, p2 = n1.precision(), n2.precision()
            _, covs = _exponential(n1, n2, ts)
            w = ts[:, None]
            h = (1 - w) * (p1 @ n1.mean) + w * (p2 @ n2.mean)
            d_sigma = -covs @ (p2 - p1) @ covs
            d_mu = np.einsum("nij,nj->ni", d_sigma, h) + covs @ (p2 @ n2.mean - p1 @ n1.mean)
            return d_mu, d_sigma
        if self.kind == CurveKind.EM_MID:
            mm, mc = Curve(kind=CurveKind.MIXTURE, n1=n1, n2=n2).tangents(ts)
            em, ec = Curve(kind=CurveKind.EXPONENTIAL, n1=n1, n2=n2).tangents(ts)
            return 0.5 * (mm + em), 0.5 * (mc + ec)
        raise InputValidationError(f"no closed-form tangent for curve {self.kind.value}", "curves")

    def _check_samples(self, ts: np.ndarray, covs: np.ndarray) -> None:
        try:
            np.linalg.cholesky(covs)
            return
        except np.linalg.LinAlgError:
            pass
        for t, cov in zip(ts, covs):
            try:
                np.linalg.cholesky(cov)
            except np.linalg.LinAlgError:
                if self.kind == CurveKind.PROJECTED_CO:
                    raise ProjectionOutsideModel(
                        f"curve {self.kind.value} at t={t:.6g}: covariance is not positive definite"
                    )
                raise CurveEvaluationError(self.kind.value, float(t))
