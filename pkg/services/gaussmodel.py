#!/usr/bin/env python3
"""
The multivariate normal model: parameterizations, potentials and divergences.

Coordinates follow the exponential-family convention
    θ = (θ_v, θ_M) = (Σ⁻¹μ, ½Σ⁻¹)           natural
    η = (η_v, η_M) = (μ, -Σ - μμᵀ)           expectation
with the pairing ⟨θ, η⟩ = θ_v·η_v + tr(θ_M η_M).
"""

import logging
import math
from typing import Optional

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator, model_validator

from core.matcore import SpdMatrix, as_spd, symmetrize
from utils.error_handler import (
    DimensionMismatch,
    InvalidExpectationParam,
    NotPositiveDefinite,
)

logger = logging.getLogger(__name__)

LOG_2PIE = math.log(2.0 * math.pi * math.e)


class Gaussian(BaseModel):
    """A d-variate normal N(μ, Σ); Σ is certified SPD on construction."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    mean: np.ndarray
    cov: np.ndarray

    _spd: SpdMatrix = PrivateAttr()
    _precision: Optional[np.ndarray] = PrivateAttr(default=None)

    @field_validator("mean", mode="before")
    @classmethod
    def _coerce_mean(cls, v):
        arr = np.array(v, dtype=float).reshape(-1)
        arr.setflags(write=False)
        return arr

    @field_validator("cov", mode="before")
    @classmethod
    def _coerce_cov(cls, v):
        arr = symmetrize(v)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def _certify(self):
        if self.mean.size < 1:
            raise DimensionMismatch("d >= 1", self.mean.size)
        if self.cov.shape != (self.mean.size, self.mean.size):
            raise DimensionMismatch((self.mean.size, self.mean.size), self.cov.shape, what="covariance shape")
        self._spd = SpdMatrix.from_array(self.cov)
        return self

    @property
    def dim(self) -> int:
        return self.mean.size

    @property
    def spd(self) -> SpdMatrix:
        return self._spd

    def logdet(self) -> float:
        return self._spd.logdet()

    def precision(self) -> np.ndarray:
        if self._precision is None:
            self._precision = self._spd.inverse()
        return self._precision

    def solve(self, b: np.ndarray) -> np.ndarray:
        return scipy.linalg.cho_solve((self._spd.lower, True), b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gaussian):
            return NotImplemented
        return bool(np.array_equal(self.mean, other.mean) and np.array_equal(self.cov, other.cov))

    def allclose(self, other: "Gaussian", atol: float = 1e-10) -> bool:
        return (
            self.dim == other.dim
            and np.allclose(self.mean, other.mean, rtol=0, atol=atol)
            and np.allclose(self.cov, other.cov, rtol=0, atol=atol)
        )


class NaturalParam(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    theta_v: np.ndarray
    theta_M: np.ndarray


class ExpectationParam(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eta_v: np.ndarray
    eta_M: np.ndarray


class TangentDisplacement(BaseModel):
    """Infinitesimal displacement (dμ, dΣ) at a Gaussian."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    d_mu: np.ndarray
    d_sigma: np.ndarray

    @field_validator("d_mu", mode="before")
    @classmethod
    def _coerce_mu(cls, v):
        return np.array(v, dtype=float).reshape(-1)

    @field_validator("d_sigma", mode="before")
    @classmethod
    def _coerce_sigma(cls, v):
        return symmetrize(v)


def check_same_dim(n1: Gaussian, n2: Gaussian) -> int:
    if n1.dim != n2.dim:
        raise DimensionMismatch(n1.dim, n2.dim)
    return n1.dim


def push_forward(n: Gaussian, a: np.ndarray, shift: np.ndarray = None) -> Gaussian:
    """Image of N(μ, Σ) under x ↦ A·x + shift."""
    a = np.asarray(a, dtype=float)
    mean = a @ n.mean
    if shift is not None:
        mean = mean + np.asarray(shift, dtype=float)
    return Gaussian(mean=mean, cov=a @ n.cov @ a.T)


# =====================================================
# PARAMETERIZATIONS
# =====================================================

def to_natural(n: Gaussian) -> NaturalParam:
    precision = n.precision()
    return NaturalParam(theta_v=precision @ n.mean, theta_M=0.5 * precision)


def from_natural(theta: NaturalParam) -> Gaussian:
    half_precision = as_spd(theta.theta_M)
    cov = 0.5 * half_precision.inverse()
    return Gaussian(mean=cov @ np.asarray(theta.theta_v, dtype=float), cov=cov)


def to_expectation(n: Gaussian) -> ExpectationParam:
    return ExpectationParam(eta_v=n.mean.copy(), eta_M=-n.cov - np.outer(n.mean, n.mean))


def from_expectation(eta: ExpectationParam) -> Gaussian:
    eta_v = np.asarray(eta.eta_v, dtype=float)
    cov = -np.asarray(eta.eta_M, dtype=float) - np.outer(eta_v, eta_v)
    try:
        return Gaussian(mean=eta_v, cov=cov)
    except NotPositiveDefinite as e:
        raise InvalidExpectationParam() from e


def pairing(theta: NaturalParam, eta: ExpectationParam) -> float:
    return float(theta.theta_v @ eta.eta_v + np.sum(theta.theta_M * eta.eta_M))


# =====================================================
# POTENTIALS
# =====================================================

def log_normalizer(theta: NaturalParam) -> float:
    """F(θ) = ½(d·log π − log|θ_M| + ½·θ_vᵀθ_M⁻¹θ_v)."""
    theta_m = as_spd(theta.theta_M)
    theta_v = np.asarray(theta.theta_v, dtype=float)
    quad = float(theta_v @ scipy.linalg.cho_solve((theta_m.lower, True), theta_v))
    return 0.5 * (theta_m.dim * math.log(math.pi) - theta_m.logdet() + 0.5 * quad)


def dual_potential(eta: ExpectationParam) -> float:
    """F*(η) = −½(log(1 + η_vᵀη_M⁻¹η_v) + log|−η_M| + d·log 2πe)."""
    eta_v = np.asarray(eta.eta_v, dtype=float)
    try:
        neg_m = as_spd(-np.asarray(eta.eta_M, dtype=float))
    except NotPositiveDefinite as e:
        raise InvalidExpectationParam("-eta_M is not positive definite") from e
    # η_vᵀη_M⁻¹η_v = −η_vᵀ(−η_M)⁻¹η_v
    quad = float(eta_v @ scipy.linalg.cho_solve((neg_m.lower, True), eta_v))
    if 1.0 - quad <= 0.0:
        raise InvalidExpectationParam()
    return -0.5 * (math.log1p(-quad) + neg_m.logdet() + neg_m.dim * LOG_2PIE)


def bregman_F(theta1: NaturalParam, theta2: NaturalParam) -> float:
    """B_F(θ1 : θ2) = F(θ1) − F(θ2) − ⟨θ1 − θ2, ∇F(θ2)⟩."""
    eta2 = to_expectation(from_natural(theta2))
    diff = NaturalParam(
        theta_v=np.asarray(theta1.theta_v) - np.asarray(theta2.theta_v),
        theta_M=np.asarray(theta1.theta_M) - np.asarray(theta2.theta_M),
    )
    return log_normalizer(theta1) - log_normalizer(theta2) - pairing(diff, eta2)


def fenchel_young(theta1: NaturalParam, eta2: ExpectationParam) -> float:
    """Y(θ1 : η2) = F(θ1) + F*(η2) − ⟨θ1, η2⟩, the mixed-coordinate form of B_F(θ1 : θ2)."""
    return log_normalizer(theta1) + dual_potential(eta2) - pairing(theta1, eta2)


# =====================================================
# DIVERGENCES AND DISTANCES
# =====================================================

def kl(n1: Gaussian, n2: Gaussian) -> float:
    """D_KL[N1 : N2] = ½(tr(Σ2⁻¹Σ1) + Δμᵀ Σ2⁻¹ Δμ − d + log|Σ2|/|Σ1|)."""
    check_same_dim(n1, n2)
    delta = n2.mean - n1.mean
    # tr(Σ2⁻¹Σ1) − d written as tr(Σ2⁻¹(Σ1 − Σ2))
    trace_term = float(np.trace(n2.solve(n1.cov - n2.cov)))
    quad = float(delta @ n2.solve(delta))
    value = 0.5 * (trace_term + quad + n2.logdet() - n1.logdet())
    return max(value, 0.0)


def kl_centered(p1: np.ndarray, p2: np.ndarray) -> float:
    """KL divergence between the centered normals N(0, P1) and N(0, P2)."""
    s1, s2 = as_spd(p1), as_spd(p2)
    if s1.dim != s2.dim:
        raise DimensionMismatch(s1.dim, s2.dim)
    trace_term = float(np.trace(scipy.linalg.cho_solve((s2.lower, True), s1.matrix - s2.matrix)))
    return max(0.5 * (trace_term + s2.logdet() - s1.logdet()), 0.0)


def jeffreys(n1: Gaussian, n2: Gaussian) -> float:
    """
    D_J = KL(N1:N2) + KL(N2:N1); the log-determinants cancel.

    Evaluated as ½tr((Σ1⁻¹ − Σ2⁻¹)(Σ2 − Σ1)) + ½Δμᵀ(Σ1⁻¹ + Σ2⁻¹)Δμ so that
    nearby arguments do not lose digits.
    """
    check_same_dim(n1, n2)
    p1, p2 = n1.precision(), n2.precision()
    delta = n2.mean - n1.mean
    value = 0.5 * float(np.sum((p1 - p2) * (n2.cov - n1.cov).T)) + 0.5 * float(delta @ (p1 + p2) @ delta)
    return max(value, 0.0)


def jeffreys_chain(means: np.ndarray, covs: np.ndarray) -> np.ndarray:
    """Jeffreys divergences between consecutive samples of stacked (n, d) means and (n, d, d) covariances."""
    precisions = np.linalg.inv(covs)
    d_cov = covs[1:] - covs[:-1]
    d_prec = precisions[:-1] - precisions[1:]
    d_mu = means[1:] - means[:-1]
    trace_term = 0.5 * np.einsum("nij,nji->n", d_prec, d_cov)
    quad = 0.5 * np.einsum("ni,nij,nj->n", d_mu, precisions[:-1] + precisions[1:], d_mu)
    return np.maximum(trace_term + quad, 0.0)


def symmetrized_bregman(n1: Gaussian, n2: Gaussian) -> float:
    """⟨θ2 − θ1, η2 − η1⟩, which equals the Jeffreys divergence."""
    check_same_dim(n1, n2)
    t1, t2 = to_natural(n1), to_natural(n2)
    e1, e2 = to_expectation(n1), to_expectation(n2)
    return float(
        (t2.theta_v - t1.theta_v) @ (e2.eta_v - e1.eta_v)
        + np.sum((t2.theta_M - t1.theta_M) * (e2.eta_M - e1.eta_M))
    )


def mahalanobis(mu1, mu2, sigma) -> float:
    """Δ_Σ(μ1, μ2) = √((μ2 − μ1)ᵀ Σ⁻¹ (μ2 − μ1))."""
    spd = as_spd(sigma)
    delta = np.asarray(mu2, dtype=float).reshape(-1) - np.asarray(mu1, dtype=float).reshape(-1)
    if delta.size != spd.dim:
        raise DimensionMismatch(spd.dim, delta.size)
    whitened = scipy.linalg.solve_triangular(spd.lower, delta, lower=True)
    return float(np.linalg.norm(whitened))


def fisher_ds2(n: Gaussian, disp: TangentDisplacement) -> float:
    """Squared Fisher line element dμᵀΣ⁻¹dμ + ½tr((Σ⁻¹dΣ)²)."""
    if disp.d_mu.size != n.dim or disp.d_sigma.shape != (n.dim, n.dim):
        raise DimensionMismatch(n.dim, (disp.d_mu.size, disp.d_sigma.shape))
    a = n.solve(disp.d_sigma)
    return float(disp.d_mu @ n.solve(disp.d_mu) + 0.5 * np.trace(a @ a))


def fisher_ds2_batch(means: np.ndarray, covs: np.ndarray, d_mus: np.ndarray, d_sigmas: np.ndarray) -> np.ndarray:
    """Vectorized ``fisher_ds2`` over stacked base points and displacements."""
    a = np.linalg.solve(covs, d_sigmas)
    b = np.linalg.solve(covs, d_mus[..., None])[..., 0]
    return np.einsum("ni,ni->n", d_mus, b) + 0.5 * np.einsum("nij,nji->n", a, a)
