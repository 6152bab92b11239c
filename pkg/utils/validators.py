#!/usr/bin/env python3
"""
Input validation utilities for the raomvn command line
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Tuple

from pydantic import ValidationError

from models.gaussian_models import PairsDocument, SetDocument
from services.curves import GENERAL_CURVES, CurveKind
from services.gaussmodel import Gaussian
from utils.error_handler import InputValidationError, RaoMVNException

Pair = Tuple[Gaussian, Gaussian]


class InputValidator:
    """Validation for CLI flags and input documents."""

    METHODS = (
        "co",
        "spc",
        "jeffreys",
        "mahalanobis-spd",
        "same-cov",
        "same-mean",
        "univariate",
        "killing",
        "hilbert",
        "siegel",
    )
    FORMATS = ("json", "csv")
    SUITES = ("examples", "kappa-table", "bounds-table", "tsweep")

    @classmethod
    def validate_positive_int(cls, value: Any, field_name: str, minimum: int = 1) -> int:
        if isinstance(value, bool):
            raise InputValidationError(f"{field_name} must be an integer", field_name)
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise InputValidationError(f"{field_name} must be an integer, got {value!r}", field_name)
        if number != value and str(number) != str(value).strip():
            raise InputValidationError(f"{field_name} must be an integer, got {value!r}", field_name)
        if number < minimum:
            raise InputValidationError(f"{field_name} must be at least {minimum}, got {number}", field_name)
        return number

    @classmethod
    def validate_segments(cls, value: Any, field_name: str = "T") -> int:
        return cls.validate_positive_int(value, field_name)

    @classmethod
    def validate_samples(cls, value: Any, field_name: str = "samples") -> int:
        """Curve sampling needs both endpoints."""
        return cls.validate_positive_int(value, field_name, minimum=2)

    @classmethod
    def validate_k(cls, value: Any, field_name: str = "k") -> int:
        return cls.validate_positive_int(value, field_name)

    @classmethod
    def validate_seed(cls, value: Any, field_name: str = "seed") -> int:
        seed = cls.validate_positive_int(value, field_name, minimum=0)
        if seed >= 2 ** 64:
            raise InputValidationError(f"{field_name} must fit in 64 bits", field_name)
        return seed

    @classmethod
    def validate_kappa(cls, value: Any, field_name: str = "kappa") -> float:
        try:
            kappa = float(value)
        except (TypeError, ValueError):
            raise InputValidationError(f"{field_name} must be a real number, got {value!r}", field_name)
        if not kappa > 0 or kappa == float("inf"):
            raise InputValidationError(f"{field_name} must be positive and finite, got {value!r}", field_name)
        return kappa

    @classmethod
    def validate_choice(cls, value: str, choices: Tuple[str, ...], field_name: str) -> str:
        if not value:
            raise InputValidationError(f"{field_name} is required", field_name)
        choice = value.strip().lower()
        if choice not in choices:
            raise InputValidationError(
                f"{field_name} must be one of: {', '.join(choices)} (got '{value}')",
                field_name,
            )
        return choice

    @classmethod
    def validate_method(cls, value: str, field_name: str = "method") -> str:
        return cls.validate_choice(value, cls.METHODS, field_name)

    @classmethod
    def validate_format(cls, value: str, field_name: str = "format") -> str:
        return cls.validate_choice(value, cls.FORMATS, field_name)

    @classmethod
    def validate_suite(cls, value: str, field_name: str = "suite") -> str:
        return cls.validate_choice(value, cls.SUITES, field_name)

    @classmethod
    def validate_curves(cls, value: Any, field_name: str = "curves") -> List[CurveKind]:
        """Comma-separated curve names; empty selects the five general curves."""
        if value is None or (isinstance(value, str) and not value.strip()):
            return list(GENERAL_CURVES)
        names = value.split(",") if isinstance(value, str) else list(value)
        kinds: List[CurveKind] = []
        for name in names:
            if not str(name).strip():
                continue
            kind = CurveKind.parse(str(name))
            if kind not in kinds:
                kinds.append(kind)
        if not kinds:
            raise InputValidationError(f"{field_name} selects no curve", field_name)
        return kinds

    @classmethod
    def validate_dims(cls, value: Any, field_name: str = "dims") -> List[int]:
        if isinstance(value, str):
            parts = [p for p in value.split(",") if p.strip()]
        else:
            parts = list(value)
        if not parts:
            raise InputValidationError(f"{field_name} is empty", field_name)
        return [cls.validate_positive_int(p, field_name) for p in parts]

    # =====================================================
    # INPUT DOCUMENTS
    # =====================================================

    @classmethod
    def load_document(cls, source: str, field_name: str = "input") -> Dict[str, Any]:
        """
        Read an input document given either inline JSON or a path to a JSON file.

        Args:
            source: Inline JSON text (starting with '{') or a file path
            field_name: Name used in diagnostics

        Returns:
            Decoded JSON object
        """
        if source is None or not str(source).strip():
            raise InputValidationError(f"{field_name} is required", field_name)
        text = str(source).strip()
        if not text.startswith("{"):
            path = Path(text)
            if not path.is_file():
                raise InputValidationError(f"{field_name} file not found: {text}", field_name)
            text = path.read_text(encoding="utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputValidationError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}", field_name)
        if not isinstance(data, dict):
            raise InputValidationError(f"{field_name} must be a JSON object", field_name)
        return data

    @classmethod
    def _schema_error(cls, error: ValidationError) -> InputValidationError:
        first = error.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        return InputValidationError(f"{location}: {first['msg']}", location)

    @classmethod
    def _to_gaussian(cls, payload, location: str) -> Gaussian:
        try:
            return payload.to_gaussian()
        except RaoMVNException as e:
            raise InputValidationError(f"{location}: {e.message}", location)
        except ValidationError as e:
            # ragged matrices fail inside the Gaussian validators
            raise InputValidationError(f"{location}: {e.errors()[0]['msg']}", location)

    @classmethod
    def parse_pairs(cls, data: Dict[str, Any]) -> List[Pair]:
        """Validate a {"pairs": [...]} document and build the Gaussians."""
        try:
            document = PairsDocument.model_validate(data)
        except ValidationError as e:
            raise cls._schema_error(e)
        pairs = []
        for i, pair in enumerate(document.pairs):
            n1 = cls._to_gaussian(pair.n1, f"pairs.{i}.n1")
            n2 = cls._to_gaussian(pair.n2, f"pairs.{i}.n2")
            if n1.dim != n2.dim:
                raise InputValidationError(
                    f"pairs.{i}: dimension mismatch ({n1.dim} vs {n2.dim})", f"pairs.{i}"
                )
            pairs.append((n1, n2))
        return pairs

    @classmethod
    def parse_set(cls, data: Dict[str, Any]) -> List[Gaussian]:
        """Validate a {"set": [...]} document and build the Gaussians."""
        try:
            document = SetDocument.model_validate(data)
        except ValidationError as e:
            raise cls._schema_error(e)
        gaussians = [cls._to_gaussian(g, f"set.{i}") for i, g in enumerate(document.set)]
        for i, g in enumerate(gaussians[1:], start=1):
            if g.dim != gaussians[0].dim:
                raise InputValidationError(
                    f"set.{i}: dimension mismatch ({gaussians[0].dim} vs {g.dim})", f"set.{i}"
                )
        return gaussians
