#!/usr/bin/env python3
"""
Error handling utilities for the raomvn library and CLI.

Every domain error carries a machine-readable ``error_code`` and the process
``exit_code`` the CLI reports for it: 2 for bad input documents or flags,
3 for a computation whose precondition does not hold.
"""

import logging
import traceback
from typing import Dict, Any, Optional

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BENCH_FAILURE = 1
EXIT_INTERNAL_ERROR = 1
EXIT_INPUT_ERROR = 2
EXIT_PRECONDITION_ERROR = 3


class RaoMVNException(Exception):
    """Base exception for raomvn."""
    def __init__(self, message: str, error_code: str = None, exit_code: int = EXIT_PRECONDITION_ERROR):
        self.message = message
        self.error_code = error_code or "RAOMVN_ERROR"
        self.exit_code = exit_code
        super().__init__(self.message)


class InputValidationError(RaoMVNException):
    """Malformed input document or command-line flag."""
    def __init__(self, message: str, field: str = None):
        super().__init__(message, "INPUT_ERROR", EXIT_INPUT_ERROR)
        self.field = field


class NotPositiveDefinite(RaoMVNException):
    """Matrix is outside the SPD cone (a Cholesky pivot was not positive)."""
    def __init__(self, message: str = "matrix is not positive definite"):
        super().__init__(message, "NOT_POSITIVE_DEFINITE")


class CurveEvaluationError(NotPositiveDefinite):
    """A sampled curve point left the SPD cone."""
    def __init__(self, kind: str, t: float):
        RaoMVNException.__init__(
            self, f"curve {kind} at t={t:.6g}: covariance is not positive definite", "CURVE_EVALUATION"
        )
        self.kind = kind
        self.t = t


class NotSymmetric(RaoMVNException):
    def __init__(self, asymmetry: float, tolerance: float):
        super().__init__(
            f"matrix asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}", "NOT_SYMMETRIC"
        )


class ConvergenceFailure(RaoMVNException):
    def __init__(self, message: str):
        super().__init__(message, "CONVERGENCE_FAILURE")


class ZeroVector(RaoMVNException):
    def __init__(self, message: str = "vector must be nonzero"):
        super().__init__(message, "ZERO_VECTOR")


class DimensionMismatch(RaoMVNException):
    def __init__(self, expected: Any, actual: Any, what: str = "dimension"):
        super().__init__(f"{what} mismatch: expected {expected}, got {actual}", "DIMENSION_MISMATCH")


class SingularFactor(RaoMVNException):
    def __init__(self, message: str):
        super().__init__(message, "SINGULAR_FACTOR")


class InvalidCrossRatio(RaoMVNException):
    def __init__(self, message: str):
        super().__init__(message, "INVALID_CROSS_RATIO")


class InvalidExpectationParam(RaoMVNException):
    def __init__(self, message: str = "-eta_M - eta_v eta_v^T is not positive definite"):
        super().__init__(message, "INVALID_EXPECTATION_PARAM")


class ProjectionOutsideModel(RaoMVNException):
    def __init__(self, message: str = "Schur complement A - beta mu mu^T is not positive definite"):
        super().__init__(message, "PROJECTION_OUTSIDE_MODEL")


class NegativeInput(RaoMVNException):
    def __init__(self, name: str, value: float):
        super().__init__(f"{name} must be non-negative, got {value}", "NEGATIVE_INPUT")


class MeanMismatch(RaoMVNException):
    def __init__(self, message: str = "operation requires equal means"):
        super().__init__(message, "MEAN_MISMATCH")


class CovarianceMismatch(RaoMVNException):
    def __init__(self, message: str = "operation requires equal covariance matrices"):
        super().__init__(message, "COVARIANCE_MISMATCH")


class EmptyInput(RaoMVNException):
    def __init__(self, what: str = "input set"):
        super().__init__(f"{what} must be nonempty", "EMPTY_INPUT")


class KTooLarge(RaoMVNException):
    def __init__(self, k: int, n: int):
        super().__init__(f"k={k} exceeds the number of points n={n}", "K_TOO_LARGE")


def create_error_response(
    exit_code: int,
    message: str,
    error_code: str = None,
    details: Dict[str, Any] = None,
    command: str = None
) -> Dict[str, Any]:
    """Create standardized error response."""
    error_response = {
        "success": False,
        "error": {
            "code": error_code or f"EXIT_{exit_code}",
            "message": message,
            "exit_code": exit_code
        }
    }

    if details:
        error_response["error"]["details"] = details

    if command:
        error_response["error"]["command"] = command

    return error_response


def log_error(error: Exception, command: Optional[str] = None, context: Dict[str, Any] = None):
    """Log error with context."""
    error_context = {
        "error_type": type(error).__name__,
        "error_message": str(error),
    }

    if command:
        error_context["command"] = command

    if context:
        error_context.update(context)

    if isinstance(error, RaoMVNException):
        logger.warning(f"Command Error: {error_context}")
    else:
        error_context["traceback"] = traceback.format_exc()
        logger.error(f"Command Error: {error_context}")
