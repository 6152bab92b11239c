#!/usr/bin/env python3
"""
Request models for the raomvn command line
"""

from pydantic import BaseModel, Field, field_validator
from typing import Optional, List, Literal

from core.config import settings
from utils.validators import InputValidator

# =====================================================
# RUN CONFIGURATION
# =====================================================

Command = Literal["dist", "approx", "curve", "seb", "kcenter", "bench"]


class RunConfig(BaseModel):
    """One CLI invocation after flag validation."""
    command: Command = Field(..., description="Subcommand to run")
    input: Optional[str] = Field(None, description="Path to an input JSON document, or inline JSON")
    T: Optional[int] = Field(None, description="Segments, or minimax iterations; per-command default when omitted")
    curves: Optional[str] = Field(None, description="Comma-separated curve selection")
    method: Optional[str] = Field(None, description="Distance or bound for the dist command")
    kappa: float = Field(default_factory=lambda: settings.default_kappa, description="Killing metric scale")
    k: Optional[int] = Field(None, description="Number of centers for kcenter")
    seed: Optional[int] = Field(None, description="Run seed; settings.default_seed when omitted")
    samples: int = Field(101, description="Number of points sampled on a curve")
    format: Optional[str] = Field(None, description="json or csv; per-command default when omitted")
    out: Optional[str] = Field(None, description="Output path; stdout when omitted")
    suite: Optional[str] = Field(None, description="Bench suite")
    trials: int = Field(default_factory=lambda: settings.bench_trials, description="Bench trials per dimension")
    dims: str = Field(default_factory=lambda: settings.bench_dims, description="Comma-separated bench dimensions")

    @field_validator("T")
    @classmethod
    def _segments(cls, v):
        return None if v is None else InputValidator.validate_segments(v)

    @field_validator("kappa")
    @classmethod
    def _kappa(cls, v):
        return InputValidator.validate_kappa(v)

    @field_validator("seed")
    @classmethod
    def _seed(cls, v):
        return None if v is None else InputValidator.validate_seed(v)

    @field_validator("samples")
    @classmethod
    def _samples(cls, v):
        return InputValidator.validate_samples(v)

    @field_validator("format")
    @classmethod
    def _format(cls, v):
        return None if v is None else InputValidator.validate_format(v)

    @field_validator("trials")
    @classmethod
    def _trials(cls, v):
        return InputValidator.validate_positive_int(v, "trials")

    def output_format(self, fallback: Optional[str] = None) -> str:
        return self.format or fallback or settings.default_format

    @property
    def run_seed(self) -> int:
        return settings.default_seed if self.seed is None else self.seed

    def dimensions(self) -> List[int]:
        return InputValidator.validate_dims(self.dims)
