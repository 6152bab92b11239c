#!/usr/bin/env python3
"""
Result models returned by the distance, approximation, minimax and bench services
"""

from pydantic import BaseModel, ConfigDict, Field
from typing import Optional, Dict, List, Any

import numpy as np

from models.gaussian_models import GaussianPayload
from services.gaussmodel import Gaussian

# =====================================================
# DISTANCE AND APPROXIMATION RESULTS
# =====================================================

class DistanceRecord(BaseModel):
    method: str = Field(..., description="Distance or bound that was evaluated")
    value: float = Field(..., description="Resulting value")


class ApproxResult(BaseModel):
    """Curve-discretization estimate of the Fisher-Rao distance."""
    value: float = Field(..., ge=0, description="Sum of √D_J over the first T − 1 curve segments")
    omitted_segment: float = Field(..., ge=0, description="√D_J of the segment ending at c(1), left out of value")
    curve_kind: str
    T: int = Field(..., ge=1, description="Number of segments")
    defect: Optional[float] = Field(None, ge=0, description="Average projection distance (projected C&O curve only)")
    defect_max: Optional[float] = Field(None, ge=0, description="Maximum projection distance (projected C&O curve only)")


class BoundsReport(BaseModel):
    co_lower: float
    spc_upper: float
    jeffreys_upper: float
    mahalanobis_spd_upper: float
    approximations: Dict[str, ApproxResult] = Field(default_factory=dict)
    kappa: Dict[str, Optional[float]] = Field(default_factory=dict, description="ρ̃_c / ρ_CO per curve")
    best_curve: Optional[str] = None
    best_value: Optional[float] = None

    def upper_bounds(self) -> Dict[str, float]:
        return {
            "spc": self.spc_upper,
            "jeffreys": self.jeffreys_upper,
            "mahalanobis-spd": self.mahalanobis_spd_upper,
        }


# =====================================================
# MINIMAX RESULTS
# =====================================================

class BallResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    center: Gaussian
    center_spd: np.ndarray
    radius: float = Field(..., ge=0)
    projection_gap: float = Field(..., ge=0)
    iterations: int

    def to_payload(self) -> Dict[str, Any]:
        return {
            "center": GaussianPayload.from_gaussian(self.center).model_dump(),
            "center_spd": self.center_spd.tolist(),
            "radius": self.radius,
            "projection_gap": self.projection_gap,
            "iterations": self.iterations,
        }


class KCenterResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    center_indices: List[int]
    centers: List[Gaussian]
    assignment: List[int] = Field(..., description="Index into centers of the nearest center for each point")
    radius: float = Field(..., ge=0, description="Largest distance from a point to its assigned center")

    def to_payload(self) -> Dict[str, Any]:
        return {
            "center_indices": self.center_indices,
            "centers": [GaussianPayload.from_gaussian(c).model_dump() for c in self.centers],
            "assignment": self.assignment,
            "radius": self.radius,
        }


# =====================================================
# BENCH RESULTS
# =====================================================

class BenchRow(BaseModel):
    suite: str
    name: str
    value: float
    expected: Optional[float] = None
    tolerance: Optional[float] = None
    status: str = Field("info", description="pass | fail | known-discrepancy | info")


class BenchSummary(BaseModel):
    suite: str
    rows: List[BenchRow] = Field(default_factory=list)
    passed: int = 0
    failed: int = 0
    known_discrepancies: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0


# =====================================================
# COMMAND OUTPUT
# =====================================================

class CommandOutput(BaseModel):
    text: str = Field("", description="Rendered JSON or CSV written to --out or stdout")
    summary: Optional[str] = Field(None, description="One-line summary written to stderr")
    exit_code: int = 0
