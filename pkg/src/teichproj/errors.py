"""
Custom exceptions for teich-projections.

This module defines domain-specific exceptions for the torus model, the
projection solvers, the experiments and configuration handling.
"""

from typing import Any, Optional


class TeichError(Exception):
    """Base exception for all teich-projections errors."""

    def __init__(
        self,
        message: str,
        code: str = "TEICH_ERROR",
        details: Optional[dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.message = message
        self.code = code
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to dictionary for error output."""
        return {
            "error": self.code,
            "message": self.message,
            "details": self.details,
        }


class DomainError(TeichError):
    """Raised when an input lies outside the domain of an operation."""

    def __init__(self, what: str, reason: str, **details: Any):
        super().__init__(
            message=f"Invalid {what}: {reason}",
            code="DOMAIN_ERROR",
            details={"what": what, **details},
        )


class DegenerateInputError(TeichError):
    """Raised when two inputs coincide where distinct ones are required."""

    def __init__(self, operation: str, reason: str):
        super().__init__(
            message=f"Degenerate input to {operation}: {reason}",
            code="DEGENERATE_INPUT",
            details={"operation": operation},
        )


class NotPseudoAnosovError(TeichError):
    """Raised when a mapping class has no translation axis."""

    def __init__(self, trace: int):
        super().__init__(
            message=f"Mapping class is not pseudo-Anosov: |trace| = {abs(trace)} <= 2",
            code="NOT_PSEUDO_ANOSOV",
            details={"trace": trace},
        )


class InfiniteIntervalError(TeichError):
    """Raised when an operation needs a finite parameter interval."""

    def __init__(self, operation: str, interval: tuple[float, float]):
        super().__init__(
            message=f"{operation} requires a finite interval, got [{interval[0]}, {interval[1]}]",
            code="INFINITE_INTERVAL",
            details={"operation": operation, "interval": list(interval)},
        )


class InapplicableCaseError(TeichError):
    """Raised when a check's precondition does not hold for its inputs."""

    def __init__(self, check: str, reason: str, **details: Any):
        super().__init__(
            message=f"{check} is inapplicable: {reason}",
            code="INAPPLICABLE_CASE",
            details={"check": check, **details},
        )


class NotCertifiedError(TeichError):
    """Raised when an operation needs an epsilon-precompact certificate."""

    def __init__(self, operation: str):
        super().__init__(
            message=f"{operation} requires a thickness certificate with epsilon > 0",
            code="NOT_CERTIFIED",
            details={"operation": operation},
        )


class ModelAssertionError(TeichError):
    """Raised when an internal numerical assertion about the model fails."""

    def __init__(self, assertion: str, **details: Any):
        super().__init__(
            message=f"Model assertion failed: {assertion}",
            code="MODEL_ASSERTION",
            details=details,
        )


class QuasiGeodesicViolation(TeichError):
    """Raised when a sampled path fails the (K, delta) inequality."""

    def __init__(self, K: float, delta: float, worst_excess: float):
        super().__init__(
            message=f"Path is not a ({K}, {delta})-quasi-geodesic: excess {worst_excess:.3g}",
            code="QUASI_GEODESIC_VIOLATION",
            details={"K": K, "delta": delta, "worst_excess": worst_excess},
        )


class EndpointClassError(TeichError):
    """Raised when a foliation class coincides with an endpoint class of a geodesic."""

    def __init__(self, operation: str, reason: str):
        super().__init__(
            message=f"{operation}: {reason}",
            code="ENDPOINT_CLASS",
            details={"operation": operation},
        )


class ConstantsMissingError(TeichError):
    """Raised when an experiment needs measured constants that are not on disk."""

    def __init__(self, path: str):
        super().__init__(
            message=f"Empirical constants not found at {path}; run 'teichproj run constants' first",
            code="CONSTANTS_MISSING",
            details={"path": path},
        )


class ValidationError(TeichError):
    """Raised when configuration or command-line validation fails."""

    def __init__(self, field: str, message: str):
        super().__init__(
            message=f"Validation error on field '{field}': {message}",
            code="VALIDATION_ERROR",
            details={"field": field},
        )
