#!/usr/bin/env python3
"""
Wire models for the Gaussian JSON schema and CLI input documents
"""

from pydantic import BaseModel, Field
from typing import List

from services.gaussmodel import Gaussian

# =====================================================
# GAUSSIAN SCHEMA
# =====================================================

class GaussianPayload(BaseModel):
    mean: List[float] = Field(..., min_length=1, description="Mean vector μ")
    cov: List[List[float]] = Field(..., min_length=1, description="Covariance matrix Σ (symmetric positive definite)")

    def to_gaussian(self) -> Gaussian:
        return Gaussian(mean=self.mean, cov=self.cov)

    @classmethod
    def from_gaussian(cls, n: Gaussian) -> "GaussianPayload":
        return cls(mean=n.mean.tolist(), cov=n.cov.tolist())


# =====================================================
# INPUT DOCUMENTS
# =====================================================

class PairPayload(BaseModel):
    n1: GaussianPayload = Field(..., description="First Gaussian")
    n2: GaussianPayload = Field(..., description="Second Gaussian")


class PairsDocument(BaseModel):
    pairs: List[PairPayload] = Field(..., min_length=1, description="Pairs of Gaussians")


class SetDocument(BaseModel):
    set: List[GaussianPayload] = Field(..., min_length=1, description="Set of Gaussians")
