#!/usr/bin/env python3
"""
Models for the golden reference-value registry
"""

from pydantic import BaseModel, Field, model_validator
from typing import Dict, List, Literal, Optional

from models.gaussian_models import PairPayload

Quantity = Literal[
    "mahalanobis",
    "same-cov",
    "same-cov-appendix",
    "same-mean",
    "univariate",
    "co",
    "killing",
    "spc",
    "jeffreys",
    "mahalanobis-spd",
    "approx",
    "defect-average",
    "defect-max",
    "sandwich",
]


class GoldenCheck(BaseModel):
    name: str
    pair: str = Field(..., description="Key into the registry's pairs")
    quantity: Quantity
    expected: float
    tolerance: float = Field(..., gt=0, description="Absolute tolerance")
    curve: Optional[str] = None
    T: Optional[int] = Field(None, ge=1)
    kappa: Optional[float] = Field(None, gt=0)
    discrepancy: Optional[str] = Field(None, description="Why the printed value is not reproducible, if it is not")

    @model_validator(mode="after")
    def _approx_needs_curve(self):
        if self.quantity == "approx" and not self.curve:
            raise ValueError(f"check '{self.name}' evaluates a curve approximation but names no curve")
        return self


class GoldenRegistry(BaseModel):
    version: int = 1
    pairs: Dict[str, PairPayload]
    checks: List[GoldenCheck]

    @model_validator(mode="after")
    def _pairs_exist(self):
        missing = sorted({c.pair for c in self.checks} - set(self.pairs))
        if missing:
            raise ValueError(f"checks reference unknown pairs: {', '.join(missing)}")
        return self
