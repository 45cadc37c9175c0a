"""Structured exception types shared across the package."""

from __future__ import annotations


class FreeLipError(Exception):
    """Base class for every structured error raised by this package."""

    code = "error"

    def payload(self) -> dict:
        """Machine-readable form, used by the CLI diagnostics stream."""
        return {"code": self.code, "message": str(self)}


class PreconditionViolation(FreeLipError):
    code = "precondition-violation"


class MetricValidationError(FreeLipError):
    """A metric axiom failed during validation; carries the witnesses."""

    code = "metric-validation"

    def __init__(self, message: str, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)

    def payload(self) -> dict:
        return {"code": self.code, "message": str(self), "witness": list(self.witness)}


class NonSquareMatrix(MetricValidationError):
    code = "non-square-matrix"


class DuplicateLabel(MetricValidationError):
    code = "duplicate-label"


class BadBaseIndex(MetricValidationError):
    code = "bad-base-index"


class NegativeDistance(MetricValidationError):
    code = "negative-distance"


class NonzeroSelfDistance(MetricValidationError):
    code = "nonzero-self-distance"


class AsymmetricDistance(MetricValidationError):
    code = "asymmetric-distance"


class ZeroDistanceDistinctPoints(MetricValidationError):
    code = "zero-distance-distinct-points"


class TriangleViolation(MetricValidationError):
    code = "triangle-violation"


class EmptySet(FreeLipError):
    code = "empty-set"


class EmptySubset(FreeLipError):
    code = "empty-subset"


class BaseNotInSubset(FreeLipError):
    code = "base-not-in-subset"


class SpaceMismatch(FreeLipError):
    code = "space-mismatch"


class UnknownPoint(FreeLipError):
    code = "unknown-point"


class ZeroVector(FreeLipError):
    code = "zero-vector"


class TooLarge(FreeLipError):
    code = "too-large"


class NumericalInstability(FreeLipError):
    code = "numerical-instability"
